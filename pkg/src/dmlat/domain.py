"""The glued three-copy polyhedron, its side pairings and vertex table.

The three copies are the generic polyhedra of the charts C1, C2, C3; all
matrices and reports are expressed in the z-frame (the C3 chart). The six
side pairings are built by configuration-tracked composition and verified
against their closed-form factorizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from dmlat.arithmetic import (
    HermitianForm3,
    hermitian_eval,
    projective_equal,
    signature as form_signature,
    sin_pi,
    exp_i_pi,
)
from dmlat.catalog import DerivedParams, LatticeSignature, derive_params
from dmlat.moves import (
    ConfiguredMap,
    Configuration,
    compose,
    hermitian_form,
    inverse,
    move_A1,
    move_J,
    move_P_inverse,
    move_R1,
    move_R2,
    p_target,
)
from dmlat.polyhedron import (
    PointAtInfinity,
    PreconditionFailed,
    _normal_at,
    _unit_negative,
    vertices_t,
)


@dataclass(frozen=True)
class DomainD:
    """The glued domain: signature, the three charts and the k'-flag."""

    signature: LatticeSignature
    params: DerivedParams
    c1: Configuration
    c2: Configuration
    c3: Configuration
    kneg_flag: bool
    diagram_ok: bool

    def x_from_z(self) -> np.ndarray:
        return move_R1(self.c3).matrix

    def z_from_y(self) -> np.ndarray:
        return move_R2(self.c2).matrix

    def u_from_z(self) -> np.ndarray:
        return move_P_inverse(self.c3).matrix

    def w_from_z(self) -> np.ndarray:
        return np.linalg.inv(side_pairings(self).Q.matrix)


def build_domain(sig: LatticeSignature) -> DomainD:
    """Construct the three charts and verify the coordinate diagram."""
    from dmlat.moves import configurations_of

    from dmlat.moves import DegenerateDenominator, move_P

    params = derive_params(sig)
    c1, c2, c3 = configurations_of(sig)
    kneg = params.k_prime.is_negative or params.k_prime.is_infinite
    y_of_z = np.linalg.inv(move_R2(c2).matrix)
    # The C1-chart route to Q degenerates exactly when k' is infinite; the
    # C2-chart factorization is then used instead.
    try:
        q = move_R1(c1).matrix @ move_R2(c1).matrix @ move_R1(c3).matrix
    except DegenerateDenominator:
        q = move_R2(c2).matrix @ move_P(c3).matrix
    ok = True
    # u = P^-1(C3) z must equal R1-at-C3 applied to w = Q^-1 z.
    u_of_z = move_P_inverse(c3).matrix
    ok = ok and projective_equal(u_of_z, move_R1(c3).matrix @ np.linalg.inv(q))
    # The relations through the C2 chart degenerate when k' is infinite.
    if not params.k_prime.is_infinite:
        # v = P^-1 applied to x = R1-at-C3 z must equal y = R2(C2)^-1 z.
        v_of_z = move_P_inverse(c1).matrix @ move_R1(c3).matrix
        ok = ok and projective_equal(v_of_z, y_of_z)
        # w via the C2 chart: P^-1(C2) y must equal Q^-1 z.
        w_of_z = move_P_inverse(c2).matrix @ y_of_z
        ok = ok and projective_equal(w_of_z, np.linalg.inv(q))
    return DomainD(sig, params, c1, c2, c3, kneg, bool(ok))


@dataclass(frozen=True)
class SidePairingSet:
    """The six side pairings in the z-frame, with factorization checks."""

    K: ConfiguredMap
    Q: ConfiguredMap
    R0: ConfiguredMap
    R1: ConfiguredMap
    R2: ConfiguredMap
    A0: ConfiguredMap
    factorizations_ok: bool

    def as_dict(self) -> dict[str, ConfiguredMap]:
        return {"K": self.K, "Q": self.Q, "R'0": self.R0,
                "R'1": self.R1, "R'2": self.R2, "A'0": self.A0}


_PAIRING_CACHE: dict[tuple[int, int, int], SidePairingSet] = {}


def side_pairings(dom: DomainD) -> SidePairingSet:
    """Build the six pairings by tracked composition; cross-check factorizations.

    Alternative factorizations routed through the C1 chart degenerate when
    k' is infinite; those cross-checks are skipped in that case and the
    primary construction falls back to a C2-chart route. Results are cached
    per signature.
    """
    from dmlat.moves import DegenerateDenominator, move_P

    cache_key = (dom.signature.p, dom.signature.k, dom.signature.p_prime)
    cached = _PAIRING_CACHE.get(cache_key)
    if cached is not None:
        return cached

    c1, c2, c3 = dom.c1, dom.c2, dom.c3
    c2_usable = not dom.params.k_prime.is_infinite
    r1p = compose(move_R1(c1), move_R1(c3))
    # Q through the C1 chart works for every signature.
    q = compose(compose(move_R1(c1), move_R2(c1)), move_R1(c3))
    k = compose(q, move_A1(c3))
    # R'0 = R1^-1 R2 R1 through the C1 chart.
    r0p = compose(inverse(move_R1(c3)), compose(move_R2(c1), move_R1(c3)))
    ki = np.linalg.inv(k.matrix)
    if c2_usable:
        r2p = compose(move_R2(c2), move_R2(c3))
        a0p = compose(compose(move_R2(c2), move_A1(c2)), inverse(move_R2(c2)))
    else:
        # The C2 chart is singular when k' is infinite; use the exchange
        # relation R'2 = K R'1 K^-1 and A'0 = K^-2 instead.
        r2p = ConfiguredMap(k.matrix @ r1p.matrix @ ki, c3, c3, "R2'")
        a0p = ConfiguredMap(ki @ ki, c3, c3, "A'0")
    ok = True
    # K = J R1 = R2 J; Q = P R1 = R2 P; R'0 = R2 R1 R2^-1. The C1-chart
    # P and J also degenerate exactly when k' is infinite.
    if c2_usable:
        ok = ok and projective_equal(k.matrix, compose(move_J(c1), move_R1(c3)).matrix)
        ok = ok and projective_equal(q.matrix, compose(move_P(c1), move_R1(c3)).matrix)
        ok = ok and projective_equal(k.matrix, compose(move_R2(c2), move_J(c3)).matrix)
        ok = ok and projective_equal(q.matrix, compose(move_R2(c2), move_P(c3)).matrix)
        ok = ok and projective_equal(r0p.matrix, compose(
            compose(move_R2(c2), move_R1(c2)), inverse(move_R2(c2))).matrix)
        # A'0 = R1^-1 J^-1 J^-1 R2^-1.
        ok = ok and projective_equal(a0p.matrix, compose(
            compose(compose(inverse(move_R1(c3)), inverse(move_J(c1))),
                    inverse(move_J(c3))),
            inverse(move_R2(c2)),
        ).matrix)
    # Exchange relations: R'2 K = K R'1 and R'0^-1 A'0 R'0 = A'0 = K^-2.
    ok = ok and projective_equal(r2p.matrix @ k.matrix, k.matrix @ r1p.matrix)
    ok = ok and projective_equal(a0p.matrix, ki @ ki)
    ok = ok and projective_equal(
        np.linalg.inv(r0p.matrix) @ a0p.matrix @ r0p.matrix, a0p.matrix
    )
    result = SidePairingSet(k, q, r0p, r1p, r2p, a0p, bool(ok))
    _PAIRING_CACHE[cache_key] = result
    return result


# The 24-vertex table: label -> (alias in D3, D1, D2, cells). Cells are the
# six columns (arg z1, arg z2, arg w1, arg w2, arg y1, arg y2); each cell is
# None (empty), "zero" (the coordinate vanishes) or an exact angle in units
# of pi, where TP and FP stand for 2*alpha-pi and pi+theta+phi-2*alpha.
_TP = "theta'"
_FP = "phi'"

_VERT_D_TABLE: dict[str, tuple[str | None, str | None, str | None, tuple]] = {
    "v0": (None, "t2", "t1", (None, None, None, None, "zero", "zero")),
    "v1": ("t1", "t1", None, ("zero", "zero", None, None, None, None)),
    "v2": ("t2", None, "t2", (None, None, "zero", "zero", None, None)),
    "v3": ("t3", "t3", "t5", (0, "zero", 0, 0, 0, _TP)),
    "v4": ("t4", "t5", "t4", (0, 0, 0, "zero", 0, 0)),
    "v5": ("t5", None, None, (0, "theta", 0, "-theta", None, None)),
    "v6": ("t6", "t6", "t13", ("-phi", "zero", 0, 0, 0, _TP)),
    "v7": ("t7", "t8", "t12", ("-phi", 0, "phi", 0, "zero", _TP)),
    "v8": ("t8", None, "t14", ("-phi", "theta", "zero", 0, "-phi'", _TP)),
    "v9": ("t9", "t12", None, ("zero", 0, "phi", "-theta", _FP, 0)),
    "v10": ("t10", "t13", "t10", (0, 0, "phi", "zero", 0, 0)),
    "v11": ("t11", "t14", "t9", ("-phi", 0, "phi", 0, "zero", 0)),
    "v12": ("t12", None, None, ("zero", "theta", "phi", "-theta", None, None)),
    "v13": ("t13", None, None, (0, "theta", 0, "-theta", None, None)),
    # The third cell of v14 is a vanishing coordinate, not a zero argument:
    # the w-chart first coordinate is identically zero at this vertex.
    "v14": ("t14", None, None, ("-phi", "theta", "zero", "-theta", None, None)),
    "v16": (None, "t4", "t3", (0, "-theta", 0, "theta", 0, "zero")),
    "v17": (None, "t7", None, ("-phi", "-theta", None, None, _FP, _TP)),
    "v18": (None, "t9", None, ("zero", "-theta", None, None, _FP, 0)),
    "v19": (None, "t10", None, (0, "-theta", None, None, _FP, "zero")),
    "v20": (None, "t11", None, ("-phi", "-theta", None, None, _FP, _TP)),
    "v21": (None, None, "t6", (None, None, 0, "theta", "-phi'", "zero")),
    "v22": (None, None, "t7", (None, None, "phi", "theta", "-phi'", 0)),
    "v23": (None, None, "t8", (None, None, "zero", "theta", "-phi'", _TP)),
    "v24": (None, None, "t11", (None, None, "phi", "theta", "-phi'", 0)),
}

VERTEX_D_LABELS = tuple(_VERT_D_TABLE)


@dataclass(frozen=True)
class DomainVertexTable:
    """z-frame coordinates of the 24 vertices plus cross-check results.

    ``collapsed`` lists vertices lying on a collapsed triple line in at
    least one chart; their table cells are not checked. In the
    k'-negative regime the y2 argument column is checked modulo pi only
    (the second chart's coordinate sector flips there), recorded in notes.
    """

    coords: dict[str, np.ndarray]
    aliases: dict[str, tuple[str | None, str | None, str | None]]
    collapsed: frozenset[str]
    table_ok: bool
    failures: tuple[str, ...]
    notes: tuple[str, ...] = ()


def _angle_value(cell, c3: Configuration) -> float:
    a, b, t, f = (float(x) for x in c3.angles())
    named = {
        0: 0.0,
        "theta": t,
        "-theta": -t,
        "phi": f,
        "-phi": -f,
        _TP: 2 * a - 1.0,
        "-phi'": -(1.0 + t + f - 2 * a),
        _FP: 1.0 + t + f - 2 * a,
    }
    return named[cell] * math.pi


def _collapsed_vertices(dom: DomainD) -> frozenset[str]:
    """Vertices lying on a collapsed triple line in any of the three charts."""
    from dmlat.polyhedron import VERTEX_LINES, collapse_status

    status = {
        "z": collapse_status(dom.c3),
        "x": collapse_status(dom.c1),
        "y": collapse_status(dom.c2),
    }
    out: set[str] = set()
    for label, (z_alias, x_alias, y_alias, _) in _VERT_D_TABLE.items():
        for chart, alias in (("z", z_alias), ("x", x_alias), ("y", y_alias)):
            if alias is None:
                continue
            for line in VERTEX_LINES[alias]:
                if status[chart].get(line, False):
                    out.add(label)
    return frozenset(out)


def vertices_D(dom: DomainD, tol_arg: float = 1e-9, tol_zero: float = 1e-10) -> DomainVertexTable:
    """Assemble the 24 z-frame vertices and cross-check the reference table."""
    c1, c2, c3 = dom.c1, dom.c2, dom.c3
    vt3 = vertices_t(c3)
    vt1 = vertices_t(c1)
    vt2 = vertices_t(c2)
    z_of_x = np.linalg.inv(move_R1(c3).matrix)
    z_of_y = move_R2(c2).matrix
    sp = side_pairings(dom)
    w_of_z = np.linalg.inv(sp.Q.matrix)
    y_of_z = np.linalg.inv(z_of_y) if not dom.params.k_prime.is_infinite else None
    collapsed = _collapsed_vertices(dom)
    coords: dict[str, np.ndarray] = {}
    aliases: dict[str, tuple] = {}
    failures: list[str] = []
    notes: list[str] = []
    if collapsed:
        notes.append(f"cells skipped for collapsed vertices: {sorted(collapsed)}")
    if dom.kneg_flag:
        notes.append("k'-negative regime: y2 arguments compared modulo pi")
    y_usable = not dom.params.k_prime.is_infinite
    if not y_usable:
        notes.append("k' infinite: the second chart is singular, y columns skipped")
    for label, (z_alias, x_alias, y_alias, cells) in _VERT_D_TABLE.items():
        if z_alias is not None:
            z = vt3[z_alias]
        elif x_alias is not None:
            z = z_of_x @ vt1[x_alias]
        else:
            z = z_of_y @ vt2[y_alias]
        finite = abs(z[2]) > 1e-12 * np.max(np.abs(z))
        if finite:
            z = z / z[2]
        coords[label] = z
        aliases[label] = (z_alias, x_alias, y_alias)
        if label in collapsed or not finite:
            continue
        w = w_of_z @ z
        w = w / w[2]
        if y_of_z is not None:
            y = y_of_z @ z
            y = y / y[2]
        else:
            y = np.zeros(3, dtype=complex)
        values = (z[0], z[1], w[0], w[1], y[0], y[1])
        for col, (cell, val) in enumerate(zip(cells, values)):
            if cell is None or (col >= 4 and not y_usable):
                continue
            if cell == "zero":
                if abs(val) > tol_zero:
                    failures.append(f"{label}: expected zero, |value|={abs(val):.2e}")
                continue
            if abs(val) <= tol_zero:
                failures.append(f"{label}: expected arg, got zero coordinate")
                continue
            want = _angle_value(cell, c3)
            got = math.atan2(val.imag, val.real)
            period = math.pi if (dom.kneg_flag and col == 5) else 2 * math.pi
            diff = abs((got - want + math.pi) % (2 * math.pi) - math.pi)
            diff = min(diff, abs(diff - period)) if period == math.pi else diff
            if diff > tol_arg:
                failures.append(f"{label}: arg mismatch {got:.6f} vs {want:.6f}")
    return DomainVertexTable(
        coords, aliases, collapsed, not failures, tuple(failures), tuple(notes)
    )


def in_D_union(point, dom: DomainD, tol: float = 1e-6) -> bool:
    """Membership in the glued domain: six z/w/y argument conditions."""
    from dmlat.polyhedron import _arg_in

    if dom.params.k_prime.is_infinite:
        raise PreconditionFailed("second chart is singular for infinite k'")
    z = np.asarray(point, dtype=complex)
    if abs(z[2]) <= 1e-12 * np.max(np.abs(z)):
        raise PointAtInfinity("point has vanishing third z-coordinate")
    z = z / z[2]
    a, b, t, f = (float(x) for x in dom.c3.angles())
    tp = 2 * a - 1.0
    fp = 1.0 + t + f - 2 * a
    sp = side_pairings(dom)
    w = np.linalg.inv(sp.Q.matrix) @ z
    y = np.linalg.inv(move_R2(dom.c2).matrix) @ z
    if abs(w[2]) <= 1e-12 * np.max(np.abs(w)) or abs(y[2]) <= 1e-12 * np.max(np.abs(y)):
        raise PointAtInfinity("image chart coordinate at infinity")
    w = w / w[2]
    y = y / y[2]
    pi = math.pi
    return (
        _arg_in(z[0], -f * pi, 0.0, tol)
        and _arg_in(z[1], -t * pi, t * pi, tol)
        and _arg_in(w[0], 0.0, f * pi, tol)
        and _arg_in(w[1], -t * pi, t * pi, tol)
        and _arg_in(y[0], -fp * pi, fp * pi, tol)
        and _arg_in(y[1], 0.0, tp * pi, tol)
    )


@dataclass(frozen=True)
class BisDReport:
    """Sampled agreement for the twelve z-frame half-space equivalences."""

    per_bullet_agreement: tuple[float, ...]
    samples_used: tuple[int, ...]

    @property
    def all_agree(self) -> bool:
        return all(a == 1.0 for a in self.per_bullet_agreement)


def _bisd_specs(dom: DomainD, sp: SidePairingSet) -> list[dict]:
    """The 12 bullets: (chart, phase, coordinate, direction, mapped matrix).

    All plain normals are the z-frame normals at C3; the transported normal
    is a side-pairing word applied to a C3 normal, except the first bullet
    which transports the C2-chart normal with the inverse composite move.
    """
    c2, c3 = dom.c2, dom.c3
    a, b, t, f = c3.angles()
    tp = 2 * a - 1
    fp = 1 + t + f - 2 * a
    K, Q = sp.K.matrix, sp.Q.matrix
    R1p, R2p = sp.R1.matrix, sp.R2.matrix
    Ki = np.linalg.inv(K)
    return [
        dict(chart="z", phase=1.0, coord=1, im_leq=True,
             plain="L_*1", mat=move_P_inverse(c2).matrix, mapped=("L_*3", c2)),
        dict(chart="z", phase=exp_i_pi(f), coord=1, im_leq=False,
             plain="L_*0", mat=Ki, mapped=("L_*0", c3)),
        dict(chart="z", phase=exp_i_pi(-t), coord=2, im_leq=True,
             plain="L_*3", mat=R1p, mapped=("L_*3", c3)),
        dict(chart="z", phase=exp_i_pi(t), coord=2, im_leq=False,
             plain="L_*3", mat=np.linalg.inv(R1p), mapped=("L_*3", c3)),
        dict(chart="y", phase=exp_i_pi(fp), coord=1, im_leq=False,
             plain="L_*0", mat=K @ K, mapped=("L_*0", c3)),
        dict(chart="y", phase=1.0, coord=2, im_leq=False,
             plain="L_*1", mat=np.linalg.inv(Q) @ R1p, mapped=("L_*3", c3)),
        dict(chart="y", phase=exp_i_pi(-tp), coord=2, im_leq=True,
             plain="L_*3", mat=np.linalg.inv(R1p) @ Q, mapped=("L_*1", c3)),
        dict(chart="y", phase=exp_i_pi(-fp), coord=1, im_leq=True,
             plain="L_*0", mat=Ki @ Ki, mapped=("L_*0", c3)),
        dict(chart="w", phase=1.0, coord=1, im_leq=False,
             plain="L_*3", mat=Q, mapped=("L_*1", c3)),
        dict(chart="w", phase=exp_i_pi(-f), coord=1, im_leq=True,
             plain="L_*0", mat=K, mapped=("L_*0", c3)),
        dict(chart="w", phase=exp_i_pi(-t), coord=2, im_leq=True,
             plain="L_*1", mat=R2p, mapped=("L_*1", c3)),
        dict(chart="w", phase=exp_i_pi(t), coord=2, im_leq=False,
             plain="L_*1", mat=np.linalg.inv(R2p), mapped=("L_*1", c3)),
    ]


def bisD_check(dom: DomainD, n_samples: int = 1000, seed: int = 7,
               neutral: float = 1e-8) -> BisDReport:
    """Sampled sign-equivalence of the 12 half-space inequalities."""
    if dom.kneg_flag:
        raise PreconditionFailed("bisD sampling requires the generic regime")
    c3 = dom.c3
    h = hermitian_form(c3)
    sp = side_pairings(dom)
    vd = vertices_D(dom)
    radius = 1.5 * max(np.max(np.abs(v[:2])) for v in vd.coords.values())
    specs = _bisd_specs(dom, sp)
    normals = []
    for spec in specs:
        n_plain = _normal_at(c3, spec["plain"])
        lab, cfg = spec["mapped"]
        n_mapped = _unit_negative(spec["mat"] @ _normal_at(cfg, lab), h, lab)
        normals.append((n_plain, n_mapped))
    w_of_z = np.linalg.inv(sp.Q.matrix)
    y_of_z = np.linalg.inv(move_R2(dom.c2).matrix)
    rng = np.random.default_rng(seed)
    agree = [0] * 12
    used = [0] * 12
    drawn = 0
    while min(used) < n_samples and drawn < 200 * n_samples:
        drawn += 1
        r = rng.uniform(-radius, radius, 4)
        z = np.array([r[0] + 1j * r[1], r[2] + 1j * r[3], 1.0], dtype=complex)
        if hermitian_eval(h, z) <= 0:
            continue
        w = w_of_z @ z
        y = y_of_z @ z
        if abs(w[2]) < 1e-9 or abs(y[2]) < 1e-9:
            continue
        charts = {"z": z, "w": w / w[2], "y": y / y[2]}
        for i, spec in enumerate(specs):
            if used[i] >= n_samples:
                continue
            pt = charts[spec["chart"]]
            im_val = (spec["phase"] * pt[spec["coord"] - 1]).imag
            if not spec["im_leq"]:
                im_val = -im_val
            n_plain, n_mapped = normals[i]
            dist = abs(h.inner(z, n_plain)) ** 2 - abs(h.inner(z, n_mapped)) ** 2
            if abs(im_val) <= neutral or abs(dist) <= neutral:
                continue
            used[i] += 1
            if (im_val < 0) == (dist < 0):
                agree[i] += 1
    return BisDReport(
        tuple(a / u if u else 0.0 for a, u in zip(agree, used)), tuple(used)
    )


def kneg_form(c: Configuration) -> HermitianForm3:
    """The area form of the k'-negative C2 chart; asserts signature (1,2)."""
    if c.phi >= 0:
        raise PreconditionFailed("kneg_form needs a negative last angle")
    form = hermitian_form(c)
    if form_signature(form) != (1, 2, 0):
        raise PreconditionFailed("k'-negative form does not have signature (1,2)")
    return form


def kneg_collapsed_vertex(dom: DomainD) -> np.ndarray:
    """z-frame coordinates of the vertex where v0, v7 and v11 coalesce.

    In the C2 chart this is the intersection of the L_*2 and L_*3 lines,
    the projective point (1, 0, 0); its self-pairing vanishes exactly when
    k' is infinite.
    """
    if not dom.kneg_flag:
        raise PreconditionFailed("collapsed vertex exists only for k' < 0 or k' = inf")
    y_point = np.array([1.0, 0.0, 0.0], dtype=complex)
    z = move_R2(dom.c2).matrix @ y_point
    norm = hermitian_eval(hermitian_form(dom.c3), z)
    is_null = abs(norm) <= 1e-9 * float(np.max(np.abs(z)) ** 2)
    if dom.params.k_prime.is_infinite:
        assert is_null, "collapsed vertex should be null for infinite k'"
    else:
        assert norm > 0, "collapsed vertex should be inside the ball for k' < 0"
    return z


def boundary_null_vertices(dom: DomainD) -> dict[str, list[np.ndarray]]:
    """z-frame vertices forced onto the boundary by each infinite parameter."""
    c1, c2, c3 = dom.c1, dom.c2, dom.c3
    out: dict[str, list[np.ndarray]] = {}
    z_of_x = np.linalg.inv(move_R1(c3).matrix)
    p = dom.params
    if p.l.is_infinite:
        out["l"] = [vertices_t(c3)["t6"], z_of_x @ vertices_t(c1)["t12"]]
    if p.l_prime.is_infinite:
        out["l'"] = [z_of_x @ vertices_t(c1)["t9"]]
    if p.d.is_infinite:
        out["d"] = [vertices_t(c3)["t3"]]
    if p.k_prime.is_infinite:
        out["k'"] = [move_R2(c2).matrix @ np.array([1.0, 0.0, 0.0], dtype=complex)]
    return out


def glueing_check(dom: DomainD, n_samples: int = 100, seed: int = 7,
                  neutral: float = 1e-9) -> bool:
    """The three glueing identities, tested by sign agreement on samples."""
    c1, c2, c3 = dom.c1, dom.c2, dom.c3
    t = float(c3.theta)
    h = hermitian_form(c3)
    sp = side_pairings(dom)
    x_of_z = move_R1(c3).matrix
    y_of_z = np.linalg.inv(move_R2(c2).matrix)
    u_of_z = move_P_inverse(c3).matrix
    w_of_z = np.linalg.inv(sp.Q.matrix)
    v_of_z = move_P_inverse(c1).matrix @ x_of_z
    vd = vertices_D(dom)
    radius = 1.5 * max(np.max(np.abs(v[:2])) for v in vd.coords.values())
    rng = np.random.default_rng(seed)
    phase = complex(math.cos(t * math.pi), -math.sin(t * math.pi))
    count = 0
    drawn = 0
    while count < n_samples and drawn < 200 * n_samples:
        drawn += 1
        r = rng.uniform(-radius, radius, 4)
        z = np.array([r[0] + 1j * r[1], r[2] + 1j * r[3], 1.0], dtype=complex)
        if hermitian_eval(h, z) <= 0:
            continue
        count += 1
        x = x_of_z @ z
        u = u_of_z @ z
        u = u / u[2]
        w = w_of_z @ z
        w = w / w[2]
        y = y_of_z @ z
        y = y / y[2]
        v = v_of_z @ z
        v = v / v[2]
        pairs = [
            (z[1].imag, (phase * x[1]).imag),
            ((phase * u[1]).imag, w[1].imag),
            (v[0].imag, y[0].imag),
        ]
        for lhs, rhs in pairs:
            if abs(lhs) <= neutral or abs(rhs) <= neutral:
                if not (abs(lhs) <= 1e-6 and abs(rhs) <= 1e-6):
                    return False
                continue
            if (lhs < 0) != (rhs < 0):
                return False
    return count > 0


def samelines_check(dom: DomainD, n_samples: int = 50, seed: int = 7,
                    tol: float = 1e-9) -> bool:
    """The chart-permuted line identities, verified on sampled line points.

    Each identity equates one line of the z-chart with one line each of the
    y- and x-charts: (L_*0, L_*0, L_*0), (L_*3, L_*3, L_*2) and
    (L_*1, L_*2, L_*1).
    """
    from dmlat.polyhedron import lines_t

    c1, c2, c3 = dom.c1, dom.c2, dom.c3
    x_of_z = move_R1(c3).matrix
    y_of_z = np.linalg.inv(move_R2(c2).matrix)
    lz = lines_t(c3)
    ly = lines_t(c2)
    lx = lines_t(c1)
    rng = np.random.default_rng(seed)
    identities = [("L_*0", "L_*0", "L_*0"), ("L_*3", "L_*3", "L_*2"),
                  ("L_*1", "L_*2", "L_*1")]
    for z_lab, y_lab, x_lab in identities:
        line = lz[z_lab]
        for _ in range(n_samples):
            other = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if line.a != 0:
                z = np.array([line.c / line.a, other, 1.0], dtype=complex)
            else:
                z = np.array([other, line.c / line.b, 1.0], dtype=complex)
            y = y_of_z @ z
            x = x_of_z @ z
            scale_y = max(1.0, float(np.max(np.abs(y))))
            scale_x = max(1.0, float(np.max(np.abs(x))))
            if ly[y_lab].residual(y) > tol * scale_y:
                return False
            if lx[x_lab].residual(x) > tol * scale_x:
                return False
    return True
