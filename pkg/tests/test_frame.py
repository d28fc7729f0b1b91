import random

import pytest

from crjet import ManifoldSpec, apply_L, apply_Lbar, build_frame, pair_theta
from crjet.errors import IndexOutOfRange
from crjet.exprs import parse_expr
from crjet.gaussrat import GaussianRational

from helpers import random_real_manifold
from oracle import assert_jet_matches, c, pdiv


def sphere(K=8):
    return ManifoldSpec.from_exprs(1, 1, K, ["z1*zb1"])


def flat(K=6):
    return ManifoldSpec.from_exprs(1, 1, K, ["0"])


def c3_pair(K=8):
    return ManifoldSpec.from_exprs(1, 2, K, ["s1*z1*zb1", "s2*z1*zb1"])


def test_sphere_coefficient():
    fr = build_frame(sphere())
    assert fr.coeffs[0][0] == parse_expr("i*z1", fr.sig, 8)


def test_c3_coefficient_is_geometric_series():
    # b = i*s1*z1/(1 + i*z1*zb1), expanded by independent long division
    fr = build_frame(c3_pair())
    num = {(1, 0, 1, 0): c(0, 1)}
    den = {(0, 0, 0, 0): c(1), (1, 1, 0, 0): c(0, 1)}
    assert_jet_matches(fr.coeffs[0][0], pdiv(num, den, 4, 8))


def test_flat_frame_vanishes():
    fr = build_frame(flat())
    assert fr.coeffs[0][0].is_stored_zero()
    assert fr.levi[0][0][0].is_stored_zero()


def test_sphere_levi():
    fr = build_frame(sphere())
    assert fr.levi[0][0][0] == parse_expr("0 - 2*i", fr.sig, 8)


def test_apply_L_examples():
    fr = build_frame(sphere())
    s1 = parse_expr("s1", fr.sig, 8)
    assert apply_L(fr, 1, s1) == parse_expr("0 - i*z1", fr.sig, 8)
    assert apply_L(fr, 1, parse_expr("7", fr.sig, 8)).is_stored_zero()
    assert apply_L(fr, 1, parse_expr("z1", fr.sig, 8)).is_stored_zero()


def test_apply_Lbar_examples():
    fr = build_frame(sphere())
    s1 = parse_expr("s1", fr.sig, 8)
    assert apply_Lbar(fr, 1, s1) == parse_expr("i*zb1", fr.sig, 8)
    assert apply_Lbar(fr, 1, parse_expr("zb1", fr.sig, 8)).is_stored_zero()


def test_apply_Lbar_is_conjugate_of_L():
    rng = random.Random(15)
    for _ in range(8):
        spec = random_real_manifold(rng, K=5)
        fr = build_frame(spec)
        from helpers import random_jet
        f = random_jet(rng, spec.sig, 5)
        for j in range(1, spec.n + 1):
            assert apply_Lbar(fr, j, f) == apply_L(fr, j, f.conjugate()).conjugate()


def test_apply_L_index_range():
    fr = build_frame(sphere())
    with pytest.raises(IndexOutOfRange):
        apply_L(fr, 2, parse_expr("s1", fr.sig, 8))


def test_pair_theta_annihilates_frame():
    rng = random.Random(77)
    for _ in range(6):
        spec = random_real_manifold(rng, K=5)
        fr = build_frame(spec)
        for mu in range(1, spec.d + 1):
            for j in range(1, spec.n + 1):
                assert pair_theta(fr, mu, ("L", j)).is_stored_zero()
                assert pair_theta(fr, mu, ("Lbar", j)).is_stored_zero()


def test_pair_theta_coordinate_diagnostic():
    fr = build_frame(flat())
    assert pair_theta(fr, 1, ("s", 1)).eval0() == GaussianRational(1)


def test_integrability_holds_on_random_manifolds():
    rng = random.Random(123)
    for _ in range(10):
        spec = random_real_manifold(rng, K=5, n=2, d=2)
        fr = build_frame(spec)  # build_frame verifies; reaching here is the test
        for j in range(spec.n):
            for k in range(spec.n):
                for mu in range(spec.d):
                    assert fr.levi[j][k][mu].conjugate() == -fr.levi[k][j][mu]


def test_hypersurface_closed_form_matches_determinant_path():
    # for d = 1 the coefficient is i*phi_zb/(1 + i*phi_s); the general
    # column-replacement determinant must reproduce it
    rng = random.Random(321)
    for _ in range(10):
        spec = random_real_manifold(rng, K=5, d=1)
        fr = build_frame(spec)
        sig, K = spec.sig, spec.work_order
        one = parse_expr("1", sig, K)
        denom = (one + spec.phi[0].derive(sig.s_slot(1)).scale(GaussianRational(0, 1)))
        inv = denom.reciprocal()
        for j in range(1, spec.n + 1):
            closed = (spec.phi[0].derive(sig.zb_slot(j)) * inv).scale(GaussianRational(0, 1))
            assert fr.coeffs[j - 1][0] == closed


def test_coefficients_vanish_at_base_point():
    rng = random.Random(55)
    for _ in range(10):
        spec = random_real_manifold(rng, K=4)
        fr = build_frame(spec)
        for row in fr.coeffs:
            for b in row:
                assert b.eval0() == GaussianRational(0)
