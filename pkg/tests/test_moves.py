"""Configured isometries: matrices, composition, braid and isometry laws."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from dmlat.arithmetic import exp_i_pi, projective_equal, sin_pi
from dmlat.catalog import LatticeSignature
from dmlat.moves import (
    ConfigMismatch,
    DegenerateDenominator,
    SingularMatrix,
    check_braid,
    check_isometry,
    compose,
    config,
    configurations_of,
    hermitian_form,
    identity_map,
    inverse,
    move_A1,
    move_J,
    move_P,
    move_P_inverse,
    move_R1,
    move_R2,
    p_target,
    r1_target,
)


def _configs(triple):
    return configurations_of(LatticeSignature(*triple))


class TestMatrices:
    def test_r1_is_diagonal(self, triple):
        for c in _configs(triple):
            a, b, t, f = c.angles()
            try:
                m = move_R1(c).matrix
            except DegenerateDenominator:
                continue
            expected = np.diag([
                1.0, exp_i_pi(t) * sin_pi(b) / sin_pi(b - t), 1.0])
            assert np.allclose(m, expected)

    def test_a1_is_diagonal(self, triple):
        for c in _configs(triple):
            _, _, _, f = c.angles()
            m = move_A1(c).matrix
            assert np.allclose(m, np.diag([exp_i_pi(2 * f), 1.0, 1.0]))

    def test_j_factors_through_p(self, triple):
        for c in _configs(triple):
            try:
                j = move_J(c)
                p = move_P(c)
            except DegenerateDenominator:
                continue
            assert projective_equal(
                j.matrix, p.matrix @ move_A1(c).matrix)


class TestIsometry:
    def test_all_moves_are_isometries(self, triple):
        for c in _configs(triple):
            for make in (move_R1, move_R2, move_A1, move_P, move_J,
                         move_P_inverse):
                try:
                    m = make(c)
                except DegenerateDenominator:
                    continue
                assert check_isometry(m), (triple, c.type_tag, m.label)

    def test_braid(self, triple):
        for c in _configs(triple):
            try:
                assert check_braid(c), (triple, c.type_tag)
            except DegenerateDenominator:
                continue


class TestComposition:
    def test_compose_tracks_targets(self):
        c1, c2, c3 = _configs((4, 4, 6))
        r1 = move_R1(c3)
        again = move_R1(r1_target(c3))
        prod = compose(again, r1)
        assert prod.source.same_angles(c3)

    def test_config_mismatch(self):
        c1, c2, c3 = _configs((4, 4, 6))
        with pytest.raises(ConfigMismatch):
            compose(move_A1(c1), move_A1(c3))

    def test_inverse_roundtrip(self):
        _, _, c3 = _configs((4, 4, 6))
        r1 = move_R1(c3)
        prod = compose(inverse(r1), r1)
        assert projective_equal(prod.matrix, np.eye(3))

    def test_identity(self):
        _, _, c3 = _configs((4, 4, 6))
        assert np.allclose(identity_map(c3).matrix, np.eye(3))

    def test_singular_inverse(self):
        # The C2 chart of the triple with infinite k' has a singular R2.
        _, c2, _ = _configs((3, 3, 3))
        with pytest.raises((SingularMatrix, DegenerateDenominator)):
            inverse(move_R2(c2))


class TestConfigurations:
    def test_chart_relations(self, triple):
        sig = LatticeSignature(*triple)
        c1, c2, c3 = configurations_of(sig)
        from dmlat.catalog import derive_params
        params = derive_params(sig)
        a, t, f = params.alpha, params.theta, params.phi
        assert c1.angles() == (a, a, t, f)
        assert c3.angles() == (a, 1 + t - a, t, f)
        assert c2.angles() == (1 + t - a, a, 2 * a - 1, 1 + t + f - 2 * a)

    def test_kneg_tag(self):
        _, c2, _ = _configs((6, 6, 3))
        assert c2.type_tag == "C2-kneg"
        _, c2g, _ = _configs((4, 4, 6))
        assert c2g.type_tag != "C2-kneg"

    def test_degenerate_chart_raises(self):
        c1, _, c3 = _configs((3, 3, 3))
        with pytest.raises(DegenerateDenominator):
            move_P_inverse(c1)
        with pytest.raises(DegenerateDenominator):
            move_R2(c3)

    def test_hermitian_form_is_hermitian(self, triple):
        for c in _configs(triple):
            h = hermitian_form(c).matrix
            assert np.allclose(h, h.conj().T)
