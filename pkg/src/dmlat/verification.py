"""Group-level checks: presentation, cycle orders, stabilisers, volumes.

The orbifold Euler characteristic is an exact alternating sum of reciprocal
stabiliser orders over a 44-row orbit table, with degeneration rules merging
or deleting rows depending on the signs of the derived parameters. Volumes
are (8 pi^2 / 3) times the Euler characteristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from dmlat.arithmetic import (
    ExceededBound,
    ExtOrder,
    exp_i_pi,
    projective_equal,
    projective_order,
    renormalize,
)
from dmlat.catalog import DerivedParams, LatticeSignature, derive_params
from dmlat.domain import (
    DomainD,
    SidePairingSet,
    build_domain,
    in_D_union,
    side_pairings,
    vertices_D,
)
from dmlat.moves import hermitian_form, move_A1
from dmlat.polyhedron import PreconditionFailed, _normal_at, _unit_negative


class UnsupportedDegeneracy(ValueError):
    """A degeneration pattern outside the implemented rules (negative l)."""


class HashCollisionAmbiguity(RuntimeError):
    """Two group elements are too close to separate at the tolerance."""


class RidgeCollapsed(ValueError):
    """The requested ridge is collapsed for this signature."""


@dataclass(frozen=True)
class OrbitRow:
    """One orbit of facets: its dimension, label and symbolic order."""

    dim: int
    label: str
    stabilizer: str
    order_expr: str


def base_orbit_table() -> list[OrbitRow]:
    """The 44 orbits of facets with their stabiliser orders, generic case."""
    rows: list[OrbitRow] = []
    dim0 = [
        ("v1,v2", "<A1,R'1>", "kp"),
        ("v3,v4", "<Q^2,R'1>", "pd"),
        ("v16,v5", "<Q^2,R'0>", "p'd"),
        ("v6,v10", "<R'0K,R'1>", "pl"),
        ("v7,v11", "<R'0K,A'0>", "k'l"),
        ("v8,v9,v17,v24", "<QK^-1,R'0K>", "kl"),
        ("v18,v14,v20,v22,v23,v12", "<A'0R'2R'1,A1>", "l'k"),
        ("v19,v13,v21", "<A'0R'2R'1,R'0>", "p'l'"),
        ("v0", "<R'0,A'0>", "k'p'"),
    ]
    dim1 = [
        ("g_{1,3},g_{2,4}", "<R'1>", "p"),
        ("g_{1,6},g_{2,10}", "<R'1>", "p"),
        ("g_{1,12},g_{2,23},g_{2,14},g_{1,18}", "<A1>", "k"),
        ("g_{3,5},g_{4,16},g_{4,5},g_{3,16}", "<Q^2>", "d"),
        ("g_{3,6},g_{4,10}", "<R'1>", "p"),
        ("g_{5,13},g_{16,19},g_{16,21}", "<R'0>", "p'"),
        ("g_{6,8},g_{10,24},g_{9,10},g_{6,17}", "<R'0K>", "l"),
        ("g_{7,8},g_{11,24},g_{9,11},g_{7,17}", "<R'0K>", "l"),
        ("g_{7,11}", "<K>", "2k'"),
        ("g_{7,15},g_{11,15}", "<A'0>", "k'"),
        ("g_{8,14},g_{22,24},g_{17,20},g_{9,18},g_{23,8},g_{9,12}", "<A1>", "k"),
        ("g_{12,13},g_{21,22},g_{18,19},g_{21,23},g_{19,20},g_{13,14}",
         "<R'1A'0R'2>", "l'"),
        ("g_{12,14},g_{22,23},g_{18,20}", "<R'2^-1K>", "2l'"),
        ("g_{15,19},g_{15,21}", "<R'0>", "p'"),
    ]
    dim2 = [
        ("F(K,Q),F(K^-1,Q^-1)", "<A1>", "k"),
        ("F(K^-1,R'0),F(K,R'0^-1)", "<KR'0>", "l"),
        ("F(R'0,R'0^-1)", "<R'0>", "p'"),
        ("F(Q,Q^-1)", "<Q>", "2d"),
        ("F(R'1,A'0^-1),F(R'1^-1,R'2),F(R'2^-1,A'0)", "<R'1A'0R'2>", "l'"),
        ("F(R'1,R'1^-1)", "<R'1>", "p"),
        ("F(R'2,R'2^-1)", "<R'2>", "p"),
        ("F(A'0,A'0^-1)", "<A'0>", "k'"),
        ("F(K,R'1),F(K,R'1^-1),F(K^-1,R'2^-1),F(K^-1,R'2)", "1", "1"),
        ("F(R'1,Q),F(R'2,Q^-1),F(R'2^-1,Q^-1),F(R'1^-1,Q)", "1", "1"),
        ("F(A'0,R'0),F(A'0^-1,R'0),F(A'0^-1,R'0^-1),F(A'0,R'0^-1)", "1", "1"),
        ("F(K,K^-1),F(K^-1,A'0),F(K,A'0^-1)", "1", "1"),
        ("F(R'1,R'0^-1),F(R'1^-1,Q^-1),F(Q,R'0)", "1", "1"),
        ("F(R'0^-1,Q^-1),F(Q,R'2),F(R'2^-1,R'0)", "1", "1"),
    ]
    dim3 = [
        ("S(K),S(K^-1)", "1", "1"),
        ("S(Q),S(Q^-1)", "1", "1"),
        ("S(R'2),S(R'2^-1)", "1", "1"),
        ("S(R'1),S(R'1^-1)", "1", "1"),
        ("S(R'0),S(R'0^-1)", "1", "1"),
        ("S(A'0),S(A'0^-1)", "1", "1"),
    ]
    for label, stab, expr in dim0:
        rows.append(OrbitRow(0, label, stab, expr))
    for label, stab, expr in dim1:
        rows.append(OrbitRow(1, label, stab, expr))
    for label, stab, expr in dim2:
        rows.append(OrbitRow(2, label, stab, expr))
    for label, stab, expr in dim3:
        rows.append(OrbitRow(3, label, stab, expr))
    rows.append(OrbitRow(4, "D", "1", "1"))
    return rows


def _atom_value(atom: str, sig: LatticeSignature, params: DerivedParams):
    """Value of a single order symbol: an int or None for infinity."""
    table = {
        "p": ExtOrder.finite(sig.p),
        "k": ExtOrder.finite(sig.k),
        "p'": ExtOrder.finite(sig.p_prime),
        "k'": params.k_prime,
        "l": params.l,
        "l'": params.l_prime,
        "d": params.d,
    }
    return table[atom].value


def order_value(expr: str, sig: LatticeSignature, params: DerivedParams):
    """Evaluate a symbolic order to an exact rational, or None for infinity.

    Grammar: "1", a product of atoms like "kp" or "p'l'", "2X" and "2X^2"
    for the doubled and doubled-squared orders.
    """
    if expr == "1":
        return Fraction(1)
    factor = Fraction(1)
    body = expr
    squared = False
    if body.startswith("2"):
        factor = Fraction(2)
        body = body[1:]
    if body.endswith("^2"):
        squared = True
        body = body[:-2]
    atoms: list[str] = []
    i = 0
    while i < len(body):
        atom = body[i]
        if i + 1 < len(body) and body[i + 1] == "'":
            atom += "'"
            i += 1
        atoms.append(atom)
        i += 1
    value = factor
    for atom in atoms:
        v = _atom_value(atom, sig, params)
        if v is None:
            return None
        value *= v
    if squared:
        assert len(atoms) == 1
        v = _atom_value(atoms[0], sig, params)
        value *= v
    return value


# Rules keyed by (parameter, regime): rows to delete as (dim, order_expr)
# and, for the merge rules, the replacement row.
_MERGED_ROWS = {
    "d": OrbitRow(0, "v(3,4,5,16)", "<R'1,R'0>", "2d^2"),
    "l'": OrbitRow(0, "v(12..14),v(18..20),v(21..23)", "<R'0,A1>", "2l'^2"),
    "k'": OrbitRow(0, "v(0,7,11)", "<R'0,K>", "2k'^2"),
}

_DELETIONS = {
    "d": ((0, "pd"), (0, "p'd"), (1, "d"), (2, "2d")),
    "l'": ((0, "l'k"), (0, "p'l'"), (1, "l'"), (1, "2l'"), (2, "l'")),
    "l": ((0, "pl"), (0, "k'l"), (0, "kl"), (1, "l"), (1, "l"), (2, "l")),
    "k'": ((0, "k'l"), (0, "k'p'"), (1, "2k'"), (1, "k'"), (2, "k'")),
}


def apply_degenerations(
    rows: list[OrbitRow], params: DerivedParams
) -> tuple[list[OrbitRow], tuple[str, ...], tuple[str, ...]]:
    """Merge or delete orbit rows for negative or infinite parameters.

    Returns (modified rows, applied rule names, notes). A negative or
    infinite parameter removes its rows; a negative one additionally adds
    the merged doubled-square row. When both the l rule and the k' merge
    touch the k'l row, the l deletion wins.
    """
    if params.l.is_negative:
        raise UnsupportedDegeneracy("negative l is outside the supported range")
    out = list(rows)
    applied: list[str] = []
    notes: list[str] = []

    def delete(dim: int, expr: str) -> bool:
        for i, row in enumerate(out):
            if row.dim == dim and row.order_expr == expr:
                del out[i]
                return True
        return False

    order = ("l", "d", "l'", "k'")
    for name in order:
        param = {"d": params.d, "l": params.l,
                 "l'": params.l_prime, "k'": params.k_prime}[name]
        if not (param.is_negative or param.is_infinite):
            continue
        if name == "l" and param.is_negative:
            continue  # unreachable; guarded above
        regime = "infinite" if param.is_infinite else "negative"
        applied.append(f"{name} {regime}")
        for dim, expr in _DELETIONS[name]:
            found = delete(dim, expr)
            if not found:
                notes.append(
                    f"row (dim {dim}, {expr}) already removed before the "
                    f"{name} rule; prior deletion wins"
                )
        if param.is_negative and name in _MERGED_ROWS:
            out.insert(0, _MERGED_ROWS[name])
    return out, tuple(applied), tuple(notes)


@dataclass(frozen=True)
class EulerReport:
    """Exact Euler characteristic, volume coefficient and rule audit trail."""

    signature: LatticeSignature
    chi: Fraction
    volume_coeff: Fraction
    applied_rules: tuple[str, ...]
    per_dim_sums: dict[int, Fraction]
    row_count: int
    notes: tuple[str, ...] = ()


def euler_characteristic(sig: LatticeSignature) -> EulerReport:
    """Exact orbifold Euler characteristic via the modified orbit table."""
    params = derive_params(sig)
    rows, applied, notes = apply_degenerations(base_orbit_table(), params)
    per_dim: dict[int, Fraction] = {d: Fraction(0) for d in range(5)}
    for row in rows:
        value = order_value(row.order_expr, sig, params)
        if value is None or value <= 0:
            raise UnsupportedDegeneracy(
                f"surviving row {row.label} has non-positive order {value}"
            )
        per_dim[row.dim] += Fraction(1) / value
    chi = sum((-1) ** d * s for d, s in per_dim.items())
    return EulerReport(
        sig, chi, Fraction(8, 3) * chi, applied, per_dim, len(rows), notes
    )


def triangle_group_order(a, b) -> Fraction:
    """Order of the (2, a, b) triangle group, 4ab/(2a + 2b - ab)."""
    a, b = Fraction(a), Fraction(b)
    return 4 * a * b / (2 * a + 2 * b - a * b)


def _canonical(m: np.ndarray) -> np.ndarray:
    """Scale to unit Frobenius norm (phase left to the projective compare)."""
    m = np.asarray(m, dtype=complex)
    return m / np.linalg.norm(m)


def _projective_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-entry distance between unit-norm matrices after phase alignment."""
    inner = np.vdot(b, a)
    if abs(inner) < 1e-12:
        return float(np.max(np.abs(a)) + np.max(np.abs(b)))
    lam = inner / abs(inner)
    return float(np.max(np.abs(a - lam * b)))


def stabilizer_bfs(
    generators, max_size: int = 10000, tol: float = 1e-9
) -> int:
    """Order of the group generated by the matrices, as projective maps.

    Breadth-first closure under multiplication by the generators and their
    inverses. Elements are deduplicated projectively: a phase-invariant
    rounded scalar (the sum of entry moduli) buckets candidates, and bucket
    members are compared after optimal phase alignment at ``tol``. A pair
    that is neither equal at ``tol`` nor separated by 10x ``tol`` raises
    HashCollisionAmbiguity rather than guessing.
    """
    if max_size > 10000:
        raise ValueError("max_size is capped at 10000")
    gens = [np.asarray(g, dtype=complex) for g in generators]
    gens = gens + [np.linalg.inv(g) for g in gens]
    seen: dict[int, list[np.ndarray]] = {}
    queue: list[np.ndarray] = []

    def register(m: np.ndarray) -> None:
        canon = _canonical(m)
        key = int(round(float(np.sum(np.abs(canon))) * 1e5))
        for k in (key - 1, key, key + 1):
            for other in seen.get(k, ()):
                dist = _projective_distance(canon, other)
                if dist <= tol:
                    return
                if dist < 10 * tol:
                    raise HashCollisionAmbiguity(
                        "two elements differ by less than 10x the tolerance"
                    )
        seen.setdefault(key, []).append(canon)
        queue.append(canon)

    count = 0
    register(np.eye(3, dtype=complex))
    head = 0
    while head < len(queue):
        current = queue[head]
        head += 1
        count += 1
        if count > max_size:
            raise ExceededBound(f"group exceeds max_size = {max_size}")
        for g in gens:
            register(current @ g)
    return count


def stabilizer_generators(stabilizer: str, words: dict[str, np.ndarray]):
    """Matrices for a stabiliser word string like "<Q^2,R'1>"."""
    if stabilizer == "1":
        return [np.eye(3, dtype=complex)]
    names = stabilizer.strip("<>").split(",")
    return [words[name] for name in names]


@dataclass(frozen=True)
class RelationEntry:
    name: str
    status: str  # "pass", "fail", "skipped"
    detail: str = ""


@dataclass(frozen=True)
class RelationReport:
    signature: LatticeSignature
    entries: tuple[RelationEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.status != "fail" for e in self.entries)


def _pairing_words(dom: DomainD, sp: SidePairingSet) -> dict[str, np.ndarray]:
    d = {name: m.matrix for name, m in sp.as_dict().items()}
    d["A1"] = move_A1(dom.c3).matrix
    d["Q^2"] = d["Q"] @ d["Q"]
    d["R'0K"] = d["R'0"] @ d["K"]
    d["QK^-1"] = d["Q"] @ np.linalg.inv(d["K"])
    d["A'0R'2R'1"] = d["A'0"] @ d["R'2"] @ d["R'1"]
    d["Q^-1K"] = np.linalg.inv(d["Q"]) @ d["K"]
    d["R'1A'0R'2"] = d["R'1"] @ d["A'0"] @ d["R'2"]
    d["KR'0"] = d["K"] @ d["R'0"]
    d["R'2^-1K"] = np.linalg.inv(d["R'2"]) @ d["K"]
    return d


def _order_matches(m: np.ndarray, n: int, tol: float, max_order: int) -> tuple[bool, str]:
    try:
        measured = projective_order(m, max_order, tol)
    except ExceededBound:
        return False, f">= {max_order}"
    return measured.value == n, str(measured)


def check_relations(
    sig: LatticeSignature, tol: float = 1e-9, max_order: int = 200
) -> RelationReport:
    """Test every presentation relation that has a positive finite exponent."""
    dom = build_domain(sig)
    params = dom.params
    sp = side_pairings(dom)
    w = _pairing_words(dom, sp)
    entries: list[RelationEntry] = []

    powers = [
        ("R'1^p", w["R'1"], ExtOrder.finite(sig.p)),
        ("R'2^p", w["R'2"], ExtOrder.finite(sig.p)),
        ("R'0^p'", w["R'0"], ExtOrder.finite(sig.p_prime)),
        ("A'0^k'", w["A'0"], params.k_prime),
        ("(Q^-1K)^k", w["Q^-1K"], ExtOrder.finite(sig.k)),
        ("(R'0K)^l", w["R'0K"], params.l),
        ("(A'0R'2R'1)^l'", w["A'0R'2R'1"], params.l_prime),
        ("Q^2d", w["Q"], ExtOrder.finite(2 * params.d.value)
         if params.d.value is not None else ExtOrder.infinite()),
    ]
    for name, m, exponent in powers:
        if not exponent.is_positive:
            entries.append(RelationEntry(name, "skipped",
                                         f"exponent {exponent} not positive finite"))
            continue
        ok, measured = _order_matches(m, exponent.value, tol, max_order)
        entries.append(RelationEntry(
            name, "pass" if ok else "fail", f"order {measured}"))

    identities = [
        ("Q = R'1R'0", w["Q"], w["R'1"] @ w["R'0"]),
        ("Q = R'0R'2", w["Q"], w["R'0"] @ w["R'2"]),
        ("Q = R'2^-1QR'1", w["Q"],
         np.linalg.inv(w["R'2"]) @ w["Q"] @ w["R'1"]),
        ("R'0^-1A'0R'0 = A'0",
         np.linalg.inv(w["R'0"]) @ w["A'0"] @ w["R'0"], w["A'0"]),
        ("A'0 = K^-2", w["A'0"], np.linalg.inv(w["K"] @ w["K"])),
        ("R'2K = KR'1", w["R'2"] @ w["K"], w["K"] @ w["R'1"]),
    ]
    for name, lhs, rhs in identities:
        ok = projective_equal(lhs, rhs, tol)
        entries.append(RelationEntry(name, "pass" if ok else "fail"))

    def braid(i: int, t: np.ndarray, s: np.ndarray) -> bool:
        lhs = np.eye(3, dtype=complex)
        rhs = np.eye(3, dtype=complex)
        for j in range(i):
            lhs = lhs @ (t if j % 2 == 0 else s)
            rhs = rhs @ (s if j % 2 == 0 else t)
        return projective_equal(lhs, rhs, tol)

    k_word = w["R'1"] @ w["R'0"] @ w["A1"]
    braids = [
        ("br4(R'1,R'0)", 4, w["R'1"], w["R'0"]),
        ("br2((R'1R'0A1)^-2,R'0)", 2,
         np.linalg.inv(k_word @ k_word), w["R'0"]),
        ("br2(A1,R'1)", 2, w["A1"], w["R'1"]),
    ]
    for name, i, t, s in braids:
        entries.append(RelationEntry(
            name, "pass" if braid(i, t, s) else "fail"))
    return RelationReport(sig, tuple(entries))


@dataclass(frozen=True)
class CycleEntry:
    name: str
    ell: int
    m_symbol: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class CycleReport:
    signature: LatticeSignature
    entries: tuple[CycleEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.status != "fail" for e in self.entries)


def cycle_orders(
    sig: LatticeSignature, tol: float = 1e-9, max_order: int = 200
) -> CycleReport:
    """Measure each cycle transformation's projective order (= ell * m)."""
    dom = build_domain(sig)
    params = dom.params
    sp = side_pairings(dom)
    w = _pairing_words(dom, sp)
    entries: list[CycleEntry] = []
    rows = [
        ("Q^-1K", w["Q^-1K"], 1, "k", ExtOrder.finite(sig.k)),
        ("R'0", w["R'0"], 1, "p'", ExtOrder.finite(sig.p_prime)),
        ("R'2", w["R'2"], 1, "p", ExtOrder.finite(sig.p)),
        ("Q", w["Q"], 2, "d", params.d),
        ("A'0", w["A'0"], 1, "k'", params.k_prime),
        ("R'1A'0R'2", w["R'1"] @ w["A'0"] @ w["R'2"], 1, "l'", params.l_prime),
        ("R'1", w["R'1"], 1, "p", ExtOrder.finite(sig.p)),
        ("R'0K", w["R'0K"], 1, "l", params.l),
    ]
    for name, m, ell, sym, value in rows:
        if not value.is_positive:
            entries.append(CycleEntry(name, ell, sym, "skipped",
                                      f"{sym} = {value} not positive finite"))
            continue
        ok, measured = _order_matches(m, ell * value.value, tol, max_order)
        entries.append(CycleEntry(
            name, ell, sym, "pass" if ok else "fail", f"order {measured}"))

    # (R'2^-1 K)^2 equals the inverse cycle transformation of R'1 A'0 R'2.
    half = np.linalg.inv(w["R'2"]) @ w["K"]
    ok = projective_equal(
        half @ half, np.linalg.inv(w["R'1"] @ w["A'0"] @ w["R'2"]), tol)
    entries.append(CycleEntry("(R'2^-1K)^2 = (R'1A'0R'2)^-1", 1, "l'",
                              "pass" if ok else "fail"))

    identities = [
        ("R'0Q^-1R'1", w["R'0"] @ np.linalg.inv(w["Q"]) @ w["R'1"]),
        ("R'2Q^-1R'0", w["R'2"] @ np.linalg.inv(w["Q"]) @ w["R'0"]),
        ("R'1K^-1R'2^-1K",
         w["R'1"] @ np.linalg.inv(w["K"]) @ np.linalg.inv(w["R'2"]) @ w["K"]),
        ("R'1^-1Q^-1R'2Q",
         np.linalg.inv(w["R'1"]) @ np.linalg.inv(w["Q"]) @ w["R'2"] @ w["Q"]),
        ("A'0R'0^-1A'0^-1R'0",
         w["A'0"] @ np.linalg.inv(w["R'0"]) @ np.linalg.inv(w["A'0"]) @ w["R'0"]),
        ("KA'0K", w["K"] @ w["A'0"] @ w["K"]),
    ]
    eye = np.eye(3, dtype=complex)
    for name, m in identities:
        ok = projective_equal(m, eye, tol)
        entries.append(CycleEntry(name + " = id", 1, "1",
                                  "pass" if ok else "fail"))

    # Q^2 fixes the triple-line ridge of Q pointwise (surviving vertices).
    if params.d.is_positive:
        vd = vertices_D(dom)
        q2 = w["Q^2"]
        fixed = True
        for lab in ("v3", "v4", "v5"):
            if lab in vd.collapsed:
                continue
            v = vd.coords[lab]
            image = q2 @ v
            lam = image[int(np.argmax(np.abs(v)))] / v[int(np.argmax(np.abs(v)))]
            fixed = fixed and bool(
                np.max(np.abs(image - lam * v)) <= tol * np.max(np.abs(v)) * abs(lam)
            )
        entries.append(CycleEntry("Q^2 fixes F(Q,Q^-1) pointwise", 2, "d",
                                  "pass" if fixed else "fail"))
    else:
        entries.append(CycleEntry("Q^2 fixes F(Q,Q^-1) pointwise", 2, "d",
                                  "skipped", "ridge collapsed"))
    return CycleReport(sig, tuple(entries))


# Reference sign rows for the Lagrangian ridge: images of D and the expected
# signs of (im z1, im e^{i phi} z1, im e^{i theta} z2, im e^{-i theta} z2).
_LAGRANGIAN_SIGNS = (
    ("id", (-1, 1, 1, -1)),
    ("R'1^-1", (-1, 1, -1, -1)),
    ("K^-1", (-1, -1, 1, -1)),
    ("R'1^-1K^-1", (-1, -1, -1, -1)),
)


@dataclass(frozen=True)
class TessellationReport:
    signature: LatticeSignature
    ridge: str
    rows: tuple[tuple[str, float], ...]
    samples_used: int

    @property
    def all_match(self) -> bool:
        return all(frac == 1.0 for _, frac in self.rows)


def _sample_domain_points(dom: DomainD, n: int, seed: int) -> list[np.ndarray]:
    """Interior points of the glued domain by vectorized rejection sampling."""
    from dmlat.moves import move_R2

    h = hermitian_form(dom.c3).matrix
    sp = side_pairings(dom)
    w_of_z = np.linalg.inv(sp.Q.matrix)
    y_of_z = np.linalg.inv(move_R2(dom.c2).matrix)
    vd = vertices_D(dom)
    radius = 1.5 * max(np.max(np.abs(v[:2])) for v in vd.coords.values()
                       if np.isfinite(v).all())
    a, _, t, f = (float(x) for x in dom.c3.angles())
    tp = 2 * a - 1.0
    fp = 1.0 + t + f - 2 * a
    pi = math.pi
    bounds = [  # (chart, coordinate, lower, upper) on the argument
        (0, 0, -f * pi, 0.0), (0, 1, -t * pi, t * pi),
        (1, 0, 0.0, f * pi), (1, 1, -t * pi, t * pi),
        (2, 0, -fp * pi, fp * pi), (2, 1, 0.0, tp * pi),
    ]
    rng = np.random.default_rng(seed)
    points: list[np.ndarray] = []
    batches = 0
    while len(points) < n and batches < 400:
        batches += 1
        r = rng.uniform(-radius, radius, (4, 8192))
        z = np.vstack([r[0] + 1j * r[1], r[2] + 1j * r[3],
                       np.ones(8192, dtype=complex)])
        keep = np.einsum("ij,ik,kj->j", z.conj(), h, z).real > 0
        w = w_of_z @ z
        y = y_of_z @ z
        keep &= (np.abs(w[2]) > 1e-12) & (np.abs(y[2]) > 1e-12)
        charts = (z, w / w[2], y / y[2])
        for chart, coord, lo, hi in bounds:
            arg = np.angle(charts[chart][coord])
            keep &= (arg > lo) & (arg < hi)
        for col in np.flatnonzero(keep):
            if len(points) < n:
                points.append(z[:, col].copy())
    return points


def tessellation_sign_table(
    sig: LatticeSignature,
    ridge_id: str = "F(K,R'1)",
    n_samples: int = 500,
    seed: int = 7,
    neutral: float = 1e-9,
) -> TessellationReport:
    """Sampled check of the tessellation sign pattern around a ridge.

    Supports the Lagrangian ridge F(K,R'1) (four sign rows) and the Giraud
    ridge F(K,K^-1) (three pairwise-separating distance conditions).
    """
    from dmlat.catalog import classify_degeneracies

    params = derive_params(sig)
    report = classify_degeneracies(params, sig)
    if ridge_id in report.collapsed_ridges:
        raise RidgeCollapsed(f"{ridge_id} is collapsed for {sig}")
    dom = build_domain(sig)
    if dom.kneg_flag:
        raise PreconditionFailed("sampling requires the generic regime")
    sp = side_pairings(dom)
    c3 = dom.c3
    t, f = float(c3.theta), float(c3.phi)
    points = _sample_domain_points(dom, n_samples, seed)
    if ridge_id == "F(K,R'1)":
        mats = {
            "id": np.eye(3, dtype=complex),
            "R'1^-1": np.linalg.inv(sp.R1.matrix),
            "K^-1": np.linalg.inv(sp.K.matrix),
            "R'1^-1K^-1": np.linalg.inv(sp.K.matrix @ sp.R1.matrix),
        }
        phases = (1.0, exp_i_pi(c3.phi), exp_i_pi(c3.theta),
                  exp_i_pi(-c3.theta))
        rows = []
        for name, signs in _LAGRANGIAN_SIGNS:
            m = mats[name]
            good = total = 0
            for z in points:
                image = m @ z
                image = image / image[2]
                vals = (phases[0] * image[0], phases[1] * image[0],
                        phases[2] * image[1], phases[3] * image[1])
                for want, val in zip(signs, vals):
                    if abs(val.imag) <= neutral:
                        continue
                    total += 1
                    if (val.imag > 0) == (want > 0):
                        good += 1
            rows.append((name, good / total if total else 0.0))
        return TessellationReport(sig, ridge_id, tuple(rows), len(points))
    if ridge_id == "F(K,K^-1)":
        h = hermitian_form(c3)
        n0 = _normal_at(c3, "L_*0")
        k = sp.K.matrix
        ki = np.linalg.inv(k)
        n_plus = _unit_negative(k @ n0, h, "K(n0)")
        n_minus = _unit_negative(ki @ n0, h, "K^-1(n0)")
        copies = (("id", np.eye(3, dtype=complex), n0),
                  ("K", k, n_plus), ("K^-1", ki, n_minus))
        others = {"id": (n_plus, n_minus), "K": (n0, n_minus),
                  "K^-1": (n0, n_plus)}
        rows = []
        for name, m, own in copies:
            good = total = 0
            for z in points:
                image = m @ z
                d_own = abs(h.inner(image, own))
                separated = True
                decisive = False
                for other in others[name]:
                    diff = abs(h.inner(image, other)) - d_own
                    if abs(diff) <= neutral:
                        continue
                    decisive = True
                    separated = separated and diff > 0
                if not decisive:
                    continue
                total += 1
                if separated:
                    good += 1
            rows.append((name, good / total if total else 0.0))
        return TessellationReport(sig, ridge_id, tuple(rows), len(points))
    raise ValueError(f"unsupported ridge {ridge_id}")


# Reference comparison values: signature -> (this construction's reference
# value, the commensurable lattice's reference value, its name).
_COMMENSURABILITY_TABLE = {
    (6, 6, 3): (Fraction(1, 12), Fraction(1, 72), "(6,2)"),
    (10, 10, 5): (Fraction(3, 20), Fraction(1, 40), "(10,2)"),
    (12, 12, 6): (Fraction(7, 48), Fraction(7, 288), "(12,2)"),
    (18, 18, 9): (Fraction(13, 108), Fraction(13, 648), "(18,2)"),
    (4, 4, 3): (Fraction(1, 12), Fraction(1, 72), "(4,3)"),
    (4, 4, 5): (Fraction(297, 400), Fraction(33, 800), "(4,5)"),
    (4, 4, 6): (Fraction(13, 48), Fraction(13, 288), "(4,6)"),
}


@dataclass(frozen=True)
class CommensurabilityEntry:
    signature: tuple[int, int, int]
    computed_chi: Fraction
    reference_partner_value: Fraction
    ratio: Fraction
    status: str
    detail: str = ""


def commensurability_check() -> tuple[CommensurabilityEntry, ...]:
    """Index-6 ratio of computed Euler characteristics to the reference data.

    For every row of the first two blocks the computed value divided by the
    partner's reference value must be exactly 6. The (4,4,5) row's reference
    first-column value disagrees with this construction's result by a
    factor of 3 and is reported as a discrepancy, never asserted.
    """
    out: list[CommensurabilityEntry] = []
    for trip, (reference_chi, partner, name) in _COMMENSURABILITY_TABLE.items():
        sig = LatticeSignature(*trip)
        chi = euler_characteristic(sig).chi
        ratio = chi / partner
        status = "pass" if ratio == 6 else "fail"
        detail = f"partner {name}"
        if chi != reference_chi:
            detail += (f"; reference value {reference_chi} differs from computed "
                       f"{chi} (flagged, not asserted)")
        out.append(CommensurabilityEntry(trip, chi, partner, ratio, status, detail))
    return tuple(out)
