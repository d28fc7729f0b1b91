"""Iterated Lie derivatives of characteristic forms and multiplier determinants.

One Lie step along L_k maps a holomorphic form with coefficient row
(sigma_1..sigma_d, rho_1..rho_n) to

    new sigma_mu = L_k sigma_mu - sum_nu sigma_nu * d(b[k][nu])/ds_mu
    new rho_j    = L_k rho_j    + sum_mu sigma_mu * levi[j][k][mu].

A power L^alpha = L_1^a1 ... L_n^an is operator composition with the
rightmost factor acting first, so iteration walks the step schedule of alpha
backwards and the outermost applied step is the first schedule entry.  This
is the unique reading consistent with the closed-form coefficient recursion
implemented in lie_power_recursive, which serves as an independent route and
must agree exactly with the iterated one.

Valid-order budget: the frame coefficients already cost one derivative of
phi, the Levi tensor costs another, and each Lie step one more.  An input of
work order K therefore supports |alpha| <= K - 2; the functions here refuse
(OrderBudgetExceeded) rather than silently truncate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import IndexOutOfRange, OrderBudgetExceeded
from .frame import HoloForm, apply_L, characteristic_row
from .jets import JetMatrix

BUDGET_MARGIN = 2  # derivative orders consumed before the first Lie step


@dataclass(frozen=True)
class LieSchedule:
    """Step schedule of a multi-index: direction j repeated alpha_j times,
    ascending.  prefix(l)/suffix(l) are the multi-indices of the first l and
    the remaining |alpha| - l steps."""
    alpha: tuple

    @property
    def steps(self):
        out = []
        for j, a in enumerate(self.alpha, start=1):
            out.extend([j] * a)
        return tuple(out)

    def direction(self, l):
        return self.steps[l - 1]

    def prefix(self, l):
        vec = [0] * len(self.alpha)
        for j in self.steps[:l]:
            vec[j - 1] += 1
        return tuple(vec)

    def suffix(self, l):
        vec = list(self.alpha)
        for j in self.steps[:l]:
            vec[j - 1] -= 1
        return tuple(vec)


@dataclass(frozen=True, eq=False)
class LieRow:
    """Coefficient row of L^alpha theta^mu over (theta^1..theta^d, omega^1..omega^n)."""
    alpha: tuple
    mu: int
    theta: tuple
    omega: tuple

    def row(self):
        return self.theta + self.omega

    def values_at_zero(self):
        return tuple(entry.eval0() for entry in self.row())


def required_order(max_steps):
    return max_steps + BUDGET_MARGIN


def check_budget(frame, steps):
    need = required_order(steps)
    if frame.work_order < need:
        raise OrderBudgetExceeded(
            f"work order {frame.work_order} supports at most "
            f"{frame.work_order - BUDGET_MARGIN} Lie steps; "
            f"{steps} requested (need input order >= {need})",
            required_order=need)


def lie_once(frame, k, form):
    """One Lie derivative along L_k of a holomorphic form."""
    if not 1 <= k <= frame.n:
        raise IndexOutOfRange(f"CR direction {k} outside 1..{frame.n}")
    sig = frame.sig
    b_row = frame.coeffs[k - 1]
    new_theta = []
    for mu in range(frame.d):
        out = apply_L(frame, k, form.theta[mu])
        s_mu = sig.s_slot(mu + 1)
        for nu in range(frame.d):
            out = out - form.theta[nu] * b_row[nu].derive(s_mu)
        new_theta.append(out)
    new_omega = []
    for j in range(frame.n):
        out = apply_L(frame, k, form.omega[j])
        for mu in range(frame.d):
            out = out + form.theta[mu] * frame.levi[j][k - 1][mu]
        new_omega.append(out)
    return HoloForm(tuple(new_theta), tuple(new_omega))


def _check_indices(frame, alpha, mu):
    if len(alpha) != frame.n or any(a < 0 for a in alpha):
        raise IndexOutOfRange(
            f"multi-index {alpha} invalid for {frame.n} CR directions")
    if not 1 <= mu <= frame.d:
        raise IndexOutOfRange(f"characteristic index {mu} outside 1..{frame.d}")


def lie_power(frame, alpha, mu):
    """L^alpha theta^mu by iterating single Lie steps in schedule order."""
    alpha = tuple(alpha)
    _check_indices(frame, alpha, mu)
    check_budget(frame, sum(alpha))
    form = _iterated_form(frame, alpha, mu)
    return LieRow(alpha, mu, form.theta, form.omega)


def _iterated_form(frame, alpha, mu):
    key = ("iter", alpha, mu)
    cached = frame._row_cache.get(key)
    if cached is not None:
        return cached
    if sum(alpha) == 0:
        form = characteristic_row(frame, mu)
    else:
        # outermost factor is the first schedule step: the lowest direction
        p1 = next(j for j, a in enumerate(alpha, start=1) if a > 0)
        inner = _iterated_form(frame, _decrement(alpha, p1), mu)
        form = lie_once(frame, p1, inner)
    frame._row_cache[key] = form
    return form


def _decrement(alpha, j):
    vec = list(alpha)
    vec[j - 1] -= 1
    return tuple(vec)


def lie_power_recursive(frame, alpha, mu):
    """L^alpha theta^mu by the closed-form coefficient recursion.

    theta-part: T(0) is the Kronecker row; for alpha != 0,

        T(alpha)_tau = L_p1 T(alpha')_tau - sum_nu d(b[p1][nu])/ds_tau T(alpha')_nu

    with p1 the first schedule step and alpha' the remaining steps.
    omega-part, with m = |alpha| and prefix/suffix from the schedule:

        A(alpha)_j = sum_{k=1..m} L^{prefix(k-1)}(
                         sum_nu T(suffix(k))_nu * levi[j][p(k)][nu] ).

    Must agree exactly with lie_power; used as a cross-check oracle.
    """
    alpha = tuple(alpha)
    _check_indices(frame, alpha, mu)
    check_budget(frame, sum(alpha))
    sched = LieSchedule(alpha)
    steps = sched.steps
    theta = _recursive_theta(frame, alpha, mu)
    omega = []
    for j in range(frame.n):
        acc = None
        for k in range(1, len(steps) + 1):
            direction = steps[k - 1]
            suffix_theta = _recursive_theta(frame, sched.suffix(k), mu)
            inner = None
            for nu in range(frame.d):
                piece = suffix_theta[nu] * frame.levi[j][direction - 1][nu]
                inner = piece if inner is None else inner + piece
            term = _apply_schedule(frame, steps[:k - 1], inner)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = characteristic_row(frame, mu).omega[j]
        omega.append(acc)
    return LieRow(alpha, mu, theta, tuple(omega))


def _recursive_theta(frame, alpha, mu):
    key = ("rec-theta", alpha, mu)
    cached = frame._row_cache.get(key)
    if cached is not None:
        return cached
    if sum(alpha) == 0:
        theta = characteristic_row(frame, mu).theta
    else:
        p1 = next(j for j, a in enumerate(alpha, start=1) if a > 0)
        sub = _recursive_theta(frame, _decrement(alpha, p1), mu)
        sig = frame.sig
        theta = []
        for tau in range(frame.d):
            out = apply_L(frame, p1, sub[tau])
            s_tau = sig.s_slot(tau + 1)
            for nu in range(frame.d):
                out = out - frame.coeffs[p1 - 1][nu].derive(s_tau) * sub[nu]
            theta.append(out)
        theta = tuple(theta)
    frame._row_cache[key] = theta
    return theta


def _apply_schedule(frame, steps, f):
    # composition along a schedule: the rightmost (last listed) step acts first
    for direction in reversed(steps):
        f = apply_L(frame, direction, f)
    return f


def multiplier_det(frame, alphas, r):
    """Determinant D(alphas, r) of N = n + d stacked coefficient rows."""
    size = frame.n + frame.d
    alphas = [tuple(a) for a in alphas]
    r = list(r)
    if len(alphas) != size or len(r) != size:
        raise IndexOutOfRange(
            f"need exactly {size} rows (multi-index, characteristic index) pairs")
    rows = [lie_power(frame, a, ri).row() for a, ri in zip(alphas, r)]
    return JetMatrix(rows).det()


def graded_multi_indices(n, up_to):
    """All multi-indices over n directions with degree <= up_to, in graded-lex
    order: ascending total degree, then ascending lexicographic."""
    out = []
    for deg in range(up_to + 1):
        level = []
        for combo in combinations_with_replacement(range(n), deg):
            vec = [0] * n
            for j in combo:
                vec[j] += 1
            level.append(tuple(vec))
        level.sort()
        out.extend(level)
    return out
