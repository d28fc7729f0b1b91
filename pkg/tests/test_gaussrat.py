import random

import pytest

from crjet.gaussrat import GaussianRational, I, ONE, Rat, ZERO


def g(re, im=0):
    return GaussianRational(Rat(re), Rat(im))


def test_field_basics():
    a = GaussianRational(Rat(1, 2), Rat(3))
    b = g(2, -1)
    assert a + b == GaussianRational(Rat(5, 2), Rat(2))
    assert a - a == ZERO
    assert I * I == g(-1)
    assert (a * b) / b == a
    assert -a + a == ZERO


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conjugation_involution():
    rng = random.Random(7)
    for _ in range(50):
        a = GaussianRational(Rat(rng.randint(-9, 9), rng.randint(1, 9)),
                             Rat(rng.randint(-9, 9), rng.randint(1, 9)))
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).im == 0


def test_inverse():
    a = g(3, 4)
    assert a * a.inverse() == ONE


def test_str_forms():
    assert str(g(3)) == "3"
    assert str(GaussianRational(Rat(1, 2))) == "1/2"
    assert str(g(0, 1)) == "i"
    assert str(g(0, -2)) == "-2*i"
    assert str(GaussianRational(Rat(3), Rat(-1, 2))) == "3 - 1/2*i"
    assert str(ZERO) == "0"


def test_int_interop():
    assert g(3) == 3
    assert g(3, 1) != 3
    assert 2 * g(1, 1) == g(2, 2)
    assert 1 - g(0, 1) == g(1, -1)
