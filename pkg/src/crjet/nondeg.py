"""Nondegeneracy orders at the base point.

Finite nondegeneracy: the spans E_k(0) of the value rows of L^alpha theta^mu
(|alpha| <= k) first fill the N = n + d dimensional holomorphic cotangent
space at k = k0.  The order is decided by exact rank over the Gaussian
rationals, never by hunting for a nonzero determinant; a witness multiplier
is reconstructed afterwards from a rank-achieving row selection, so whenever
k0 is reported there is a determinant D with D(0) != 0 backing it.

Degeneracy verdicts are always "up to k_max": a finite computation cannot
exclude nondegeneracy at higher order.

Weak nondegeneracy factors a declared power of s out of the defining
equation and tests the span of the mixed-derivative vectors of the inner
function at 0 (after checking, for hypersurfaces, that the pure z and zb
derivatives vanish through the requested order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import (
    GammaConstraintViolated,
    MissingFactoredForm,
    OrderBudgetExceeded,
    ZeroJet,
)
from .frame import build_frame
from .jets import Jet, RowReducer, rank_at_zero
from .lie import (
    apply_L,
    graded_multi_indices,
    lie_power,
    multiplier_det,
    required_order,
)


@dataclass(frozen=True)
class SFactor:
    beta: tuple              # componentwise-maximal s-exponent dividing all terms
    remainder: object        # Jet with s^beta divided out
    certified_order: float   # divisibility is only certified up to this order

    @property
    def remainder_at_0(self):
        return self.remainder.eval0()


def s_factor(f):
    """Extract the maximal monomial s^beta dividing every stored term.

    Truncation-limited: a truncated series only certifies divisibility up to
    its valid order, which is recorded in the result.
    """
    if f.is_stored_zero():
        raise ZeroJet("s-factor of the zero jet is undefined")
    sig = f.sig
    beta = None
    for exps, _ in f.iter_terms():
        s_part = exps[2 * sig.n:]
        beta = s_part if beta is None else tuple(map(min, beta, s_part))
    monomial = [0] * sig.nvars
    for m, e in enumerate(beta):
        monomial[2 * sig.n + m] = e
    remainder = f.divide_monomial(tuple(monomial))
    return SFactor(tuple(beta), remainder, f.valid_order)


@dataclass(frozen=True)
class Witness:
    alphas: tuple            # N multi-indices
    r: tuple                 # N characteristic indices (1-based)
    det: object              # the multiplier jet D(alphas, r)
    value_at_0: object
    s_beta: tuple
    remainder_at_0: object


def _make_witness(frame, alphas, r):
    det = multiplier_det(frame, alphas, r)
    sf = s_factor(det)
    return Witness(tuple(alphas), tuple(r), det, det.eval0(),
                   sf.beta, sf.remainder_at_0)


@dataclass(frozen=True)
class NondegReport:
    ranks: tuple             # ((k, rank), ...) nondecreasing, rank(0) = d
    k0: int | None
    witnesses: tuple
    k_max: int
    space_dim: int           # N = n + d


def finite_order(spec, k_max, frame=None):
    """Ranks of E_k(0) for k <= k_max and the first k reaching N, if any."""
    if spec.work_order < required_order(k_max):
        raise OrderBudgetExceeded(
            f"finite order up to {k_max} needs input order >= {required_order(k_max)}, "
            f"got {spec.work_order}", required_order=required_order(k_max))
    if frame is None:
        frame = build_frame(spec)
    n, d = spec.n, spec.d
    space_dim = n + d
    reducer = RowReducer(space_dim)
    selection = []
    ranks = []
    k0 = None
    for k in range(k_max + 1):
        for alpha in graded_multi_indices(n, k):
            if sum(alpha) != k:
                continue
            for mu in range(1, d + 1):
                values = lie_power(frame, alpha, mu).values_at_zero()
                if reducer.add(values):
                    selection.append((alpha, mu))
        ranks.append((k, reducer.rank))
        if k0 is None and reducer.rank == space_dim:
            k0 = k
    witnesses = ()
    if k0 is not None:
        witnesses = (_make_witness(frame, [a for a, _ in selection],
                                   [mu for _, mu in selection]),)
    return NondegReport(tuple(ranks), k0, witnesses, k_max, space_dim)


def _row_tuples_graded(candidates, size, max_deg_each):
    """N-tuples of multi-indices ordered by total degree, then lexicographic."""
    degrees = {a: sum(a) for a in candidates}
    in_lex = sorted(candidates)
    for total in range(size * max_deg_each + 1):
        stack = []

        def rec(i, remaining):
            if i == size:
                if remaining == 0:
                    yield tuple(stack)
                return
            room = (size - 1 - i) * max_deg_each
            for a in in_lex:
                da = degrees[a]
                if da > remaining or remaining - da > room:
                    continue
                stack.append(a)
                yield from rec(i + 1, remaining - da)
                stack.pop()

        yield from rec(0, total)


def search_multipliers(spec, k, budget, frame=None):
    """Deterministic enumeration of multiplier determinants D(alphas, r).

    Tuples are visited graded-lex over the multi-index rows, lexicographic
    over the characteristic choices; at most `budget` tuples are examined.
    Returns the tuples whose determinant is a nonzero jet, with value at 0
    and s-factor, in visiting order.
    """
    check_budget_spec(spec, k)
    if frame is None:
        frame = build_frame(spec)
    n, d = spec.n, spec.d
    size = n + d
    candidates = graded_multi_indices(n, k)
    found = []
    visited = 0
    for alphas in _row_tuples_graded(candidates, size, k):
        for r in product(range(1, d + 1), repeat=size):
            visited += 1
            if visited > budget:
                return found
            if len({(a, ri) for a, ri in zip(alphas, r)}) < size:
                continue  # repeated rows: determinant vanishes identically
            det = multiplier_det(frame, alphas, r)
            if not det.is_stored_zero():
                found.append(_make_witness(frame, alphas, r))
    return found


def check_budget_spec(spec, steps):
    if spec.work_order < required_order(steps):
        raise OrderBudgetExceeded(
            f"order budget: need input order >= {required_order(steps)}, "
            f"got {spec.work_order}", required_order=required_order(steps))


# ---------------------------------------------------------------------------
# weak nondegeneracy


@dataclass(frozen=True)
class WeakOrderEntry:
    k: int
    vanishing_ok: bool
    first_violation: str | None
    span_rank: int


@dataclass(frozen=True)
class WeakReport:
    kind: str                # "hypersurface" | "first_codimension"
    gamma: tuple
    entries: tuple           # WeakOrderEntry per checked k
    k0: int | None
    k_max: int
    cr_dim: int
    convention: str


_GAMMA_CONVENTION = ("gamma ordering convention: gamma1 <= gamma_nu componentwise "
                     "with strict inequality in at least one coordinate")


def _pure_derivative_at_zero(inner, block, alpha):
    """d^alpha/d(block)^alpha of the inner function at 0 (block: 'z' or 'zb')."""
    sig = inner.sig
    exps = [0] * sig.nvars
    for j, e in enumerate(alpha, start=1):
        exps[sig.z_slot(j) if block == "z" else sig.zb_slot(j)] = e
    coeff = inner.coefficient(tuple(exps))
    return coeff * _multi_factorial(alpha)


def _mixed_gradient_at_zero(inner, alpha):
    """Vector over j of d/dz_j d^alpha/dzb^alpha of inner at 0.

    The z and zb exponent blocks are disjoint, so the derivative value is the
    coefficient of z_j * zb^alpha scaled by alpha! alone.
    """
    sig = inner.sig
    fact = _multi_factorial(alpha)
    out = []
    for j in range(1, sig.n + 1):
        exps = [0] * sig.nvars
        for l, e in enumerate(alpha, start=1):
            exps[sig.zb_slot(l)] = e
        exps[sig.z_slot(j)] = 1
        out.append(inner.coefficient(tuple(exps)) * fact)
    return out


def _multi_factorial(alpha):
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def _span_rank(inner, k, n):
    rows = [_mixed_gradient_at_zero(inner, alpha)
            for alpha in graded_multi_indices(n, k)]
    return rank_at_zero(rows)


def _require_inner_order(spec, inner, k_max, extra):
    need = k_max + extra
    if spec.work_order < need:
        raise OrderBudgetExceeded(
            f"weak check to order {k_max} needs input order >= {need}, "
            f"got {spec.work_order}", required_order=need)
    if inner.valid_order < need:
        raise OrderBudgetExceeded(
            f"inner function only valid to order {inner.valid_order}, "
            f"need {need}", required_order=need)


def weak_check_hypersurface(spec, k_max):
    """Weak nondegeneracy of Im w = s^m phi: pure z/zb derivatives of phi
    vanish through order k and the mixed-gradient vectors span C^n."""
    if spec.d != 1:
        raise MissingFactoredForm("hypersurface weak check requires d = 1")
    if spec.gamma is None:
        raise MissingFactoredForm("no factored form (gamma exponent) declared")
    m = spec.gamma[0][0]
    if m < 1:
        raise MissingFactoredForm(f"factored exponent must be >= 1, got {m}")
    inner = spec.inner_phi(1)
    _require_inner_order(spec, inner, k_max, extra=1)
    n = spec.n
    entries = []
    k0 = None
    for k in range(1, k_max + 1):
        violation = None
        for alpha in graded_multi_indices(n, k):
            for block in ("z", "zb"):
                if _pure_derivative_at_zero(inner, block, alpha):
                    violation = f"phi_{block}^{alpha} (0) != 0"
                    break
            if violation:
                break
        rank = _span_rank(inner, k, n)
        entries.append(WeakOrderEntry(k, violation is None, violation, rank))
        if k0 is None and violation is None and rank == n:
            k0 = k
    return WeakReport("hypersurface", spec.gamma, tuple(entries), k0, k_max, n,
                      convention="factored form Im w = s^m phi with m >= 1")


def weak_check_first_codim(spec, k_max):
    """Weak nondegeneracy in the first codimension: requires the exponent
    ordering gamma1 < gamma_nu (componentwise, strict somewhere), |gamma1| >= 2,
    and the span condition on the first inner function only."""
    if spec.gamma is None:
        raise MissingFactoredForm("no factored form (gamma exponents) declared")
    g1 = spec.gamma[0]
    if sum(g1) < 2:
        raise GammaConstraintViolated(
            f"|gamma1| = {sum(g1)} < 2 (gamma1 = {g1}); {_GAMMA_CONVENTION}")
    for nu in range(2, spec.d + 1):
        gn = spec.gamma[nu - 1]
        if not (all(a <= b for a, b in zip(g1, gn)) and any(a < b for a, b in zip(g1, gn))):
            raise GammaConstraintViolated(
                f"gamma1 = {g1} not strictly below gamma{nu} = {gn}; {_GAMMA_CONVENTION}")
    inner = spec.inner_phi(1)
    _require_inner_order(spec, inner, k_max, extra=1)
    n = spec.n
    entries = []
    k0 = None
    for k in range(0, k_max + 1):
        rank = _span_rank(inner, k, n)
        entries.append(WeakOrderEntry(k, True, None, rank))
        if k0 is None and rank == n:
            k0 = k
    return WeakReport("first_codimension", spec.gamma, tuple(entries), k0, k_max, n,
                      convention=_GAMMA_CONVENTION)


# ---------------------------------------------------------------------------
# mapping nondegeneracy


@dataclass(frozen=True)
class MapNondegReport:
    ranks: tuple
    k0: int | None
    k_max: int
    target_dim: int          # N'


def map_finite_order(map_spec, k_max):
    """Nondegeneracy order of a CR map: ranks of the spans of
    L^alpha applied to the target gradient rows composed with (H, conj H),
    evaluated at 0."""
    src = map_spec.source_manifold
    check_budget_spec(src, k_max)
    frame = build_frame(src)
    sig, K = src.sig, src.work_order
    tsig = map_spec.target_sig
    np_ = map_spec.n_target

    images = [None] * tsig.nvars
    for j in range(1, np_ + 1):
        images[tsig.z_slot(j)] = map_spec.components[j - 1]
        images[tsig.zb_slot(j)] = map_spec.components[j - 1].conjugate()
    images[tsig.s_slot(1)] = Jet.zero(sig, K)  # unused target slot

    base_rows = []
    for rho in map_spec.rho:
        base_rows.append(tuple(
            rho.derive(tsig.z_slot(j)).substitute(images) for j in range(1, np_ + 1)))

    cache = {(0,) * src.n: base_rows}

    def rows_for(alpha):
        got = cache.get(alpha)
        if got is not None:
            return got
        p1 = next(j for j, a in enumerate(alpha, start=1) if a > 0)
        prev = rows_for(_dec(alpha, p1))
        cur = [tuple(apply_L(frame, p1, entry) for entry in row) for row in prev]
        cache[alpha] = cur
        return cur

    reducer = RowReducer(np_)
    ranks = []
    k0 = None
    for k in range(k_max + 1):
        for alpha in graded_multi_indices(src.n, k):
            if sum(alpha) != k:
                continue
            for row in rows_for(alpha):
                reducer.add([entry.eval0() for entry in row])
        ranks.append((k, reducer.rank))
        if k0 is None and reducer.rank == np_:
            k0 = k
    return MapNondegReport(tuple(ranks), k0, k_max, np_)


def _dec(alpha, j):
    vec = list(alpha)
    vec[j - 1] -= 1
    return tuple(vec)
