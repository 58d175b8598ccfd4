"""The glued domain: frame diagram, side pairings, vertices, membership."""

from __future__ import annotations

import numpy as np
import pytest

from dmlat.arithmetic import exp_i_pi, hermitian_eval, projective_equal, sin_pi
from dmlat.catalog import LatticeSignature
from dmlat.domain import (
    VERTEX_D_LABELS,
    bisD_check,
    boundary_null_vertices,
    build_domain,
    glueing_check,
    in_D_union,
    kneg_collapsed_vertex,
    kneg_form,
    samelines_check,
    side_pairings,
    vertices_D,
)
from dmlat.moves import check_isometry, configurations_of, hermitian_form
from dmlat.polyhedron import PreconditionFailed

from conftest import cached_domain, cached_pairings, cached_vertices

KNEG_TRIPLES = {(6, 6, 3), (10, 10, 5), (12, 12, 6), (18, 18, 9),
                (4, 4, 3), (3, 3, 3)}
GENERIC_TRIPLES = [(4, 4, 5), (4, 4, 6)]


class TestBuildDomain:
    def test_diagram_commutes(self, triple):
        dom = cached_domain(triple)
        assert dom.diagram_ok

    def test_kneg_flag(self, triple):
        dom = cached_domain(triple)
        assert dom.kneg_flag == (triple in KNEG_TRIPLES)


class TestSidePairings:
    def test_factorizations(self, triple):
        assert cached_pairings(triple).factorizations_ok

    def test_all_are_isometries(self, triple):
        sp = cached_pairings(triple)
        for name, m in sp.as_dict().items():
            assert check_isometry(m), (triple, name)

    def test_r1_prime_matrix(self, triple):
        dom = cached_domain(triple)
        sp = cached_pairings(triple)
        t = dom.params.theta
        expected = np.diag([1.0, exp_i_pi(2 * t), 1.0])
        assert projective_equal(sp.R1.matrix, expected)

    def test_braid_style_identities(self, triple):
        sp = cached_pairings(triple)
        k, r1, r2, a0, r0 = (sp.K.matrix, sp.R1.matrix, sp.R2.matrix,
                             sp.A0.matrix, sp.R0.matrix)
        assert projective_equal(r2 @ k, k @ r1)
        assert projective_equal(a0, np.linalg.inv(k @ k))
        assert projective_equal(np.linalg.inv(r0) @ a0 @ r0, a0)


class TestVerticesD:
    def test_24_labels(self):
        assert len(VERTEX_D_LABELS) == 24

    def test_argument_table(self, triple):
        vd = cached_vertices(triple)
        assert vd.table_ok, (triple, vd.failures)

    def test_v1_is_origin(self):
        vd = cached_vertices((4, 4, 6))
        v1 = vd.coords["v1"]
        assert np.allclose(v1 / v1[2], [0.0, 0.0, 1.0])

    def test_no_collapse_generic(self):
        for trip in GENERIC_TRIPLES:
            assert cached_vertices(trip).collapsed == frozenset()

    def test_collapse_degenerate(self):
        assert len(cached_vertices((3, 3, 4)).collapsed) > 0


class TestMembership:
    @pytest.mark.parametrize("trip", GENERIC_TRIPLES)
    def test_vertices_inside(self, trip):
        dom = cached_domain(trip)
        vd = cached_vertices(trip)
        for label, v in vd.coords.items():
            if label in vd.collapsed:
                continue
            assert in_D_union(v, dom), (trip, label)

    def test_origin_inside(self):
        dom = cached_domain((4, 4, 6))
        assert in_D_union(np.array([0, 0, 1], dtype=complex), dom)

    def test_image_vertex_outside(self):
        dom = cached_domain((4, 4, 6))
        sp = cached_pairings((4, 4, 6))
        v5 = cached_vertices((4, 4, 6)).coords["v5"]
        assert not in_D_union(sp.R1.matrix @ v5, dom)

    def test_rejected_when_c2_singular(self):
        dom = cached_domain((3, 3, 3))
        with pytest.raises(PreconditionFailed):
            in_D_union(np.array([0, 0, 1], dtype=complex), dom)


class TestSampledChecks:
    @pytest.mark.parametrize("trip", GENERIC_TRIPLES)
    def test_glueing(self, trip):
        dom = cached_domain(trip)
        assert glueing_check(dom, n_samples=100, seed=7)

    @pytest.mark.parametrize("trip", GENERIC_TRIPLES)
    def test_samelines(self, trip):
        dom = cached_domain(trip)
        assert samelines_check(dom, n_samples=50, seed=7)

    @pytest.mark.parametrize("trip", GENERIC_TRIPLES + [(3, 3, 4)])
    def test_bisD(self, trip):
        dom = cached_domain(trip)
        report = bisD_check(dom, n_samples=300, seed=7)
        assert report.all_agree
        assert min(report.samples_used) == 300

    def test_scrambled_pairing_breaks_agreement(self):
        # Replace one transported normal with a nearby wrong one and check
        # that the sampled agreement visibly collapses below 100%.
        import dmlat.domain as domain_mod
        from dmlat.polyhedron import _normal_at, _unit_negative
        dom = cached_domain((4, 4, 6))
        sp = cached_pairings((4, 4, 6))
        spec = domain_mod._bisd_specs(dom, sp)[2]
        h = hermitian_form(dom.c3)
        lab, cfg = spec["mapped"]
        bad_mat = spec["mat"] @ np.array(
            [[1.0, 0.15, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            dtype=complex)
        n_plain = _normal_at(dom.c3, spec["plain"])
        n_mapped = _unit_negative(bad_mat @ _normal_at(cfg, lab), h, lab)
        vd = cached_vertices((4, 4, 6))
        radius = 1.5 * max(np.max(np.abs(v[:2])) for v in vd.coords.values())
        rng = np.random.default_rng(7)
        good = total = 0
        while total < 200:
            r = rng.uniform(-radius, radius, 4)
            z = np.array([r[0] + 1j * r[1], r[2] + 1j * r[3], 1.0],
                         dtype=complex)
            if hermitian_eval(h, z) <= 0:
                continue
            im_val = (spec["phase"] * z[spec["coord"] - 1]).imag
            if not spec["im_leq"]:
                im_val = -im_val
            dist = (abs(h.inner(z, n_plain)) ** 2
                    - abs(h.inner(z, n_mapped)) ** 2)
            if abs(im_val) < 1e-8 or abs(dist) < 1e-8:
                continue
            total += 1
            if (im_val < 0) == (dist < 0):
                good += 1
        assert good / total < 1.0


class TestKnegForms:
    def test_kneg_signature(self):
        _, c2, _ = configurations_of(LatticeSignature(6, 6, 3))
        h = kneg_form(c2)
        from dmlat.arithmetic import signature
        assert signature(h) == (1, 2, 0)

    def test_generic_rejected(self):
        _, c2, _ = configurations_of(LatticeSignature(4, 4, 6))
        with pytest.raises(PreconditionFailed):
            kneg_form(c2)

    def test_collapsed_vertex_null_at_infinite_k_prime(self):
        dom = cached_domain((3, 3, 3))
        v = kneg_collapsed_vertex(dom)
        h = hermitian_form(dom.c3)
        assert abs(hermitian_eval(h, v)) < 1e-9 * np.max(np.abs(v)) ** 2

    def test_collapsed_vertex_positive_at_negative_k_prime(self):
        dom = cached_domain((6, 6, 3))
        v = kneg_collapsed_vertex(dom)
        h = hermitian_form(dom.c3)
        assert hermitian_eval(h, v) > 1e-9

    def test_collapsed_vertex_rejected_generic(self):
        dom = cached_domain((4, 4, 6))
        with pytest.raises(PreconditionFailed):
            kneg_collapsed_vertex(dom)


class TestBoundaryVertices:
    def test_all_null(self, triple):
        dom = cached_domain(triple)
        h3 = hermitian_form(dom.c3)
        for param, vecs in boundary_null_vertices(dom).items():
            for v in vecs:
                scale = np.max(np.abs(v)) ** 2
                assert abs(hermitian_eval(h3, v)) < 1e-9 * scale, (triple, param)

    def test_expected_parameters(self):
        dom = cached_domain((2, 6, 6))
        assert set(boundary_null_vertices(dom)) == {"l"}
        dom = cached_domain((3, 3, 3))
        assert "k'" in set(boundary_null_vertices(dom))
