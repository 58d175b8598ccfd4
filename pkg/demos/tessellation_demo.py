"""Sampled tessellation checks around the two main ridge types."""

from dmlat.catalog import LatticeSignature
from dmlat.verification import tessellation_sign_table


def main() -> None:
    sig = LatticeSignature(4, 4, 6)
    for ridge in ("F(K,R'1)", "F(K,K^-1)"):
        report = tessellation_sign_table(sig, ridge, n_samples=500, seed=7)
        print(f"{ridge} ({report.samples_used} samples)")
        for name, frac in report.rows:
            print(f"  {name:<12} agreement {frac:.4f}")
        print(f"  => {'all rows match' if report.all_match else 'MISMATCH'}")


if __name__ == "__main__":
    main()
