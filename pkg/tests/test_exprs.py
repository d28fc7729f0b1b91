import random

import pytest

from crjet import VarSig
from crjet.errors import ExpressionSyntaxError, IndexOutOfRange, UnknownVariable
from crjet.exprs import parse_expr, parse_text, render_jet
from crjet.gaussrat import GaussianRational, Rat

from helpers import random_jet

SIG = VarSig(1, 1)


def test_parse_simple_monomial():
    f = parse_expr("s1*z1*zb1", SIG, 6)
    assert f.coefficient((1, 1, 1)) == GaussianRational(1)
    assert len(f.terms) == 1


def test_parse_conj():
    assert parse_expr("conj(i*z1)", SIG, 6) == parse_expr("0 - i*zb1", SIG, 6)


def test_parse_zero_index():
    with pytest.raises(IndexOutOfRange):
        parse_expr("z0", SIG, 6)


def test_parse_index_beyond_signature():
    with pytest.raises(IndexOutOfRange):
        parse_expr("z2", SIG, 6)
    with pytest.raises(IndexOutOfRange):
        parse_expr("s3", SIG, 6)


def test_parse_unknown_name():
    with pytest.raises(UnknownVariable):
        parse_expr("w1", SIG, 6)


def test_parse_target_vocabulary():
    tsig = VarSig(2, 1)
    f = parse_expr("Zp1*Zbp2", tsig, 6, vocabulary="target")
    assert f.coefficient((1, 0, 0, 1, 0)) == GaussianRational(1)
    with pytest.raises(UnknownVariable):
        parse_expr("z1", tsig, 6, vocabulary="target")
    with pytest.raises(UnknownVariable):
        parse_expr("Zp1", SIG, 6)  # target names rejected in source vocabulary


def test_parse_rationals_and_powers():
    f = parse_expr("3/4*z1^2 - 1/4*z1^2", SIG, 6)
    assert f == parse_expr("1/2*z1^2", SIG, 6)
    assert parse_expr("(1+z1)^3", SIG, 6) == parse_expr(
        "1 + 3*z1 + 3*z1^2 + z1^3", SIG, 6)


def test_parse_negative_literals():
    assert parse_expr("-2*i*s1", SIG, 6) == parse_expr("0 - 2*i*s1", SIG, 6)
    assert parse_expr("1 - -2", SIG, 6).eval0() == GaussianRational(3)


def test_parse_syntax_errors_carry_position():
    for text, pos in [("z1 +", 4), ("(z1", 3), ("z1^", 3), ("@", 0)]:
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expr(text, SIG, 6)
        assert err.value.position == pos


def test_parse_zero_denominator():
    with pytest.raises(ExpressionSyntaxError):
        parse_expr("1/0", SIG, 6)


def test_parse_whitespace_insignificant():
    assert parse_expr(" 1  +  z1 * zb1 ", SIG, 6) == parse_expr("1+z1*zb1", SIG, 6)


def test_exact_flag_only_within_order():
    assert parse_expr("z1^2", SIG, 6).valid_order == float("inf")
    truncated = parse_expr("z1^2*zb1^2", SIG, 3)
    assert truncated.is_stored_zero()
    assert truncated.valid_order == 3


def test_ast_reuse():
    node = parse_text("1/2*z1 + conj(1/2*z1)")
    from crjet.exprs import expr_to_jet
    f4 = expr_to_jet(node, SIG, 4)
    f8 = expr_to_jet(node, SIG, 8)
    assert f4 == f8


# -- rendering ------------------------------------------------------------------

def test_render_zero():
    assert render_jet(parse_expr("0", SIG, 6)) == "0"


def test_render_constant_half():
    assert render_jet(parse_expr("1/2", SIG, 6)) == "1/2"


def test_render_graded_lex_order():
    f = parse_expr("zb1 + z1 + z1*zb1 - 2*i*s1", SIG, 6)
    assert render_jet(f) == "z1 + zb1 - 2*i*s1 + z1*zb1"


def test_render_complex_pair_coefficient():
    f = parse_expr("(1/2 + 3*i)*z1", SIG, 6)
    assert render_jet(f) == "(1/2 + 3*i)*z1"


def test_render_max_degree_marker():
    f = parse_expr("s1 + z1^3*zb1^3", SIG, 8)
    assert render_jet(f, max_degree=4) == "s1 + ..."


def test_round_trip_random():
    rng = random.Random(4242)
    for _ in range(60):
        n = rng.choice([1, 2])
        d = rng.choice([1, 2])
        sig = VarSig(n, d)
        f = random_jet(rng, sig, 6)
        text = render_jet(f)
        assert parse_expr(text, sig, 6) == f, text


def test_round_trip_negative_leading_imaginary():
    f = parse_expr("0 - i*z1 - z1^2*zb1", SIG, 6)
    text = render_jet(f)
    assert text.startswith("-1*i*z1")
    assert parse_expr(text, SIG, 6) == f


def test_rendering_deterministic():
    rng = random.Random(7)
    f = random_jet(rng, VarSig(2, 2), 5)
    assert render_jet(f) == render_jet(f)
