"""Independent brute-force series arithmetic used as a test oracle.

Deliberately shares nothing with the package kernel: plain dicts keyed by
exponent tuples, coefficients as (Fraction, Fraction) pairs, multiplication
by direct convolution, and division by triangular long division in graded
order.  Keep it dumb; its only job is to be obviously correct.
"""

from fractions import Fraction
from itertools import product

CZERO = (Fraction(0), Fraction(0))


def c(re=0, im=0):
    return (Fraction(re), Fraction(im))


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def normalized(p):
    return {e: v for e, v in p.items() if v != CZERO}


def padd(p, q):
    out = dict(p)
    for e, v in q.items():
        out[e] = cadd(out.get(e, CZERO), v)
    return normalized(out)


def pmul(p, q, K):
    out = {}
    for ea, va in p.items():
        for eb, vb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) > K:
                continue
            out[e] = cadd(out.get(e, CZERO), cmul(va, vb))
    return normalized(out)


def all_exponents(nvars, K):
    """Exponent tuples of total degree <= K, ascending degree."""
    out = []
    for e in product(range(K + 1), repeat=nvars):
        if sum(e) <= K:
            out.append(e)
    out.sort(key=lambda e: (sum(e), e))
    return out


def pdiv(num, den, nvars, K):
    """Power-series quotient num/den to total degree K; den(0) != 0."""
    zero = (0,) * nvars
    d0 = den[zero]
    q = {}
    for beta in all_exponents(nvars, K):
        acc = num.get(beta, CZERO)
        for delta, dv in den.items():
            if delta == zero or any(x > y for x, y in zip(delta, beta)):
                continue
            gamma = tuple(y - x for x, y in zip(delta, beta))
            qg = q.get(gamma)
            if qg is not None:
                acc = cadd(acc, (-cmul(dv, qg)[0], -cmul(dv, qg)[1]))
        q[beta] = cdiv(acc, d0)
    return normalized(q)


def jet_terms(jet):
    """Package jet -> oracle dict with Fraction coefficients."""
    out = {}
    for exps, coeff in jet.iter_terms():
        out[exps] = (Fraction(int(coeff.re.numerator), int(coeff.re.denominator)),
                     Fraction(int(coeff.im.numerator), int(coeff.im.denominator)))
    return out


def assert_jet_matches(jet, expected, up_to=None):
    """Exact coefficient comparison up to the jet's trustworthy order."""
    bound = min(jet.valid_order, jet.work_order)
    if up_to is not None:
        bound = min(bound, up_to)
    got = {e: v for e, v in jet_terms(jet).items() if sum(e) <= bound}
    want = {e: v for e, v in normalized(expected).items() if sum(e) <= bound}
    assert got == want, f"jets differ up to degree {bound}:\n got {got}\nwant {want}"
