"""Shared random generators for property tests.

Seeded random.Random everywhere: reruns are reproducible and failures
printable as plain inputs.
"""

from crjet import Jet, ManifoldSpec, VarSig
from crjet.exprs import render_jet
from crjet.gaussrat import GaussianRational, Rat


def random_coeff(rng, max_abs=5, max_den=5, allow_imag=True):
    re = Rat(rng.randint(-max_abs, max_abs), rng.randint(1, max_den))
    im = Rat(rng.randint(-max_abs, max_abs), rng.randint(1, max_den)) \
        if allow_imag and rng.random() < 0.5 else Rat(0)
    return GaussianRational(re, im)


def random_jet(rng, sig, K, max_terms=5, min_deg=0, max_deg=None, allow_imag=True,
               valid_order=None):
    max_deg = K if max_deg is None else max_deg
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(min_deg, max_deg)
        exps = [0] * sig.nvars
        for _ in range(deg):
            exps[rng.randrange(sig.nvars)] += 1
        coeffs[tuple(exps)] = random_coeff(rng, allow_imag=allow_imag)
    jet = Jet.from_coeffs(sig, K, coeffs)
    if valid_order is not None:
        jet = jet.with_valid_order(valid_order)
    return jet


def random_unit_jet(rng, sig, K):
    jet = random_jet(rng, sig, K, min_deg=1)
    return jet + Jet.const(sig, K, GaussianRational(rng.randint(1, 3)))


def random_real_manifold(rng, K, n=None, d=None, max_deg=3):
    """Random real polynomial defining functions with the linear part removed;
    coefficients have |numerator|, denominator <= 5."""
    n = n if n is not None else rng.choice([1, 2])
    d = d if d is not None else rng.choice([1, 2])
    sig = VarSig(n, d)
    phis = []
    for _ in range(d):
        raw = random_jet(rng, sig, K, max_terms=4, min_deg=2, max_deg=max_deg)
        real = raw + raw.conjugate()
        # drop anything below quadratic so the base-point conditions hold
        cleaned = {exps: coeff for exps, coeff in real.iter_terms() if sum(exps) >= 2}
        phis.append(render_jet(Jet.from_coeffs(sig, K, cleaned)))
    return ManifoldSpec.from_exprs(n, d, K, phis)
