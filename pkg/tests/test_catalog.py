"""Catalog rows, exact derived parameters, cone angles, degeneracies."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dmlat.catalog import (
    AngleOutOfRange,
    LatticeSignature,
    NonIntegerOrder,
    catalog,
    classify_degeneracies,
    cone_angles,
    derive_params,
)

# Frozen oracle: (k', l, l', d) for every catalog row ("inf" = infinite).
PARAM_TABLE = {
    (6, 6, 3): (-3, 2, "inf", "inf"),
    (10, 10, 5): (-5, 2, 5, 5),
    (12, 12, 6): (-6, 2, 4, 4),
    (18, 18, 9): (-9, 2, 3, 3),
    (4, 4, 3): (-6, 3, -12, -12),
    (4, 4, 5): (10, 5, 20, 20),
    (4, 4, 6): (6, 6, 12, 12),
    (3, 3, 4): (6, 12, -12, -12),
    (3, 3, 3): ("inf", 6, -6, -6),
    (2, 6, 6): (3, "inf", 6, -6),
    (2, 4, 3): (12, 12, -12, -3),
    (2, 3, 3): (6, "inf", -6, -3),
    (3, 4, 4): (12, 6, "inf", -12),
}

# Frozen oracle: the five cone angles as multiples of pi.
CONE_TABLE = {
    (6, 6, 3): ("2/3", "5/3", "5/3", "2/3", "4/3"),
    (10, 10, 5): ("4/5", "7/5", "7/5", "4/5", "8/5"),
    (12, 12, 6): ("5/6", "4/3", "4/3", "5/6", "5/3"),
    (18, 18, 9): ("8/9", "11/9", "11/9", "8/9", "16/9"),
    (4, 4, 3): ("5/6", "5/3", "5/3", "5/6", "1"),
    (4, 4, 5): ("11/10", "7/5", "7/5", "11/10", "1"),
    (4, 4, 6): ("7/6", "4/3", "4/3", "7/6", "1"),
    (3, 3, 4): ("7/6", "3/2", "3/2", "7/6", "2/3"),
    (3, 3, 3): ("1", "5/3", "5/3", "1", "2/3"),
    (2, 6, 6): ("1", "4/3", "4/3", "5/3", "2/3"),
    (2, 4, 3): ("5/6", "5/3", "5/3", "4/3", "1/2"),
    (2, 3, 3): ("1", "5/3", "5/3", "4/3", "1/3"),
    (3, 4, 4): ("1", "3/2", "3/2", "7/6", "5/6"),
}

DEGENERATE_SETS = {
    (6, 6, 3): {"k'", "l'", "d"},
    (10, 10, 5): {"k'"},
    (12, 12, 6): {"k'"},
    (18, 18, 9): {"k'"},
    (4, 4, 3): {"k'", "l'", "d"},
    (4, 4, 5): set(),
    (4, 4, 6): set(),
    (3, 3, 4): {"l'", "d"},
    (3, 3, 3): {"k'", "l'", "d"},
    (2, 6, 6): {"l", "d"},
    (2, 4, 3): {"l'", "d"},
    (2, 3, 3): {"l", "l'", "d"},
    (3, 4, 4): {"l'", "d"},
}


class TestCatalog:
    def test_thirteen_rows_in_order(self):
        sigs = catalog()
        assert len(sigs) == 13
        assert [(s.p, s.k, s.p_prime) for s in sigs] == list(PARAM_TABLE)

    def test_membership_flag(self):
        assert LatticeSignature(4, 4, 6).in_catalog
        assert not LatticeSignature(9, 9, 9).in_catalog

    def test_str(self):
        assert str(LatticeSignature(4, 4, 6)) == "(4,4,6)"


class TestDeriveParams:
    def test_base_angles(self, triple):
        p, k, pp = triple
        params = derive_params(LatticeSignature(*triple))
        assert params.theta == Fraction(1, p)
        assert params.phi == Fraction(1, k)
        assert params.alpha == Fraction(1, 2) + Fraction(1, pp)

    def test_parameter_table(self, triple):
        params = derive_params(LatticeSignature(*triple))
        got = (params.k_prime.to_json(), params.l.to_json(),
               params.l_prime.to_json(), params.d.to_json())
        assert got == PARAM_TABLE[triple]

    def test_non_integer_order(self):
        with pytest.raises(NonIntegerOrder):
            derive_params(LatticeSignature(5, 5, 5))

    def test_rejects_tiny_orders(self):
        with pytest.raises(ValueError):
            derive_params(LatticeSignature(1, 4, 4))


class TestConeAngles:
    def test_cone_table(self, triple):
        angles = cone_angles(LatticeSignature(*triple))
        assert tuple(str(a) for a in angles) == CONE_TABLE[triple]

    def test_angle_sum(self, triple):
        angles = cone_angles(LatticeSignature(*triple))
        assert sum(angles) == 6  # total cone angle 6*pi

    def test_out_of_range(self):
        with pytest.raises(AngleOutOfRange):
            cone_angles(LatticeSignature(2, 2, 2))


class TestDegeneracies:
    def test_sign_classification(self, triple):
        sig = LatticeSignature(*triple)
        report = classify_degeneracies(derive_params(sig), sig)
        statuses = {"k'": report.k_prime, "l": report.l,
                    "l'": report.l_prime, "d": report.d}
        degenerate = {n for n, s in statuses.items() if s != "positive-finite"}
        assert degenerate == DEGENERATE_SETS[triple]

    def test_no_discrepancy_notes(self, triple):
        sig = LatticeSignature(*triple)
        report = classify_degeneracies(derive_params(sig), sig)
        if triple in ((10, 10, 5), (12, 12, 6), (18, 18, 9)):
            assert any("absent" in n for n in report.notes)
        else:
            assert report.notes == ()

    def test_ridge_lists(self):
        sig = LatticeSignature(2, 6, 6)
        report = classify_degeneracies(derive_params(sig), sig)
        assert "F(K^-1,R'0)" in report.collapsed_ridges
        assert "F(Q,Q^-1)" in report.collapsed_ridges


@given(st.integers(2, 24), st.integers(2, 24), st.integers(2, 24))
def test_deficits_always_sum_to_four(p, k, pp):
    sig = LatticeSignature(p, k, pp)
    try:
        angles = cone_angles(sig)
    except (NonIntegerOrder, AngleOutOfRange):
        return
    assert sum(2 - a for a in angles) == 4
