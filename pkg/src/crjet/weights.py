"""Diagnostics for Denjoy-Carleman weight sequences.

A weight sequence (m_k) is handled through its logarithms: k!^s style terms
overflow 64-bit floats near k = 170, so every computation here lives in the
log domain.  Closed-form families carry their analytic quasianalyticity
classification; for explicit sequences the diagnostics only ever report
range-qualified trends.  Divergence of a series is not numerically decidable
and this module does not pretend otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    EmptyGrid,
    InsufficientTerms,
    NegativeArgument,
    NoStopReached,
)

_LOG_TOL = 1e-12


@dataclass(frozen=True)
class WeightSequence:
    kind: str            # "gevrey" | "log_pow" | "constant_one" | "explicit"
    param: float | None = None
    values: tuple | None = None   # explicit log(m_k) terms

    @classmethod
    def gevrey(cls, s):
        if s <= 0:
            raise NegativeArgument(f"gevrey parameter must be positive, got {s}")
        return cls("gevrey", float(s))

    @classmethod
    def log_pow(cls, sigma):
        if sigma <= 0:
            raise NegativeArgument(f"log-power parameter must be positive, got {sigma}")
        return cls("log_pow", float(sigma))

    @classmethod
    def constant_one(cls):
        return cls("constant_one")

    @classmethod
    def explicit(cls, log_terms):
        vals = tuple(float(v) for v in log_terms)
        if len(vals) < 2:
            raise InsufficientTerms("an explicit sequence needs at least two terms")
        return cls("explicit", values=vals)

    def log_m(self, k):
        if k < 0:
            raise NegativeArgument(f"sequence index {k} < 0")
        if self.kind == "gevrey":
            return self.param * math.lgamma(k + 1)
        if self.kind == "log_pow":
            # n_k = (log(k+e))^(sigma k); n_0 = 1, n_1 = (log(1+e))^sigma
            return self.param * k * math.log(math.log(k + math.e))
        if self.kind == "constant_one":
            return 0.0
        if k >= len(self.values):
            raise InsufficientTerms(
                f"explicit sequence has {len(self.values)} terms, index {k} requested")
        return self.values[k]

    def max_index(self):
        return len(self.values) - 1 if self.kind == "explicit" else None

    def label(self):
        if self.kind == "gevrey":
            return f"gevrey(s={self.param:g})"
        if self.kind == "log_pow":
            return f"log_pow(sigma={self.param:g})"
        if self.kind == "constant_one":
            return "constant_one"
        return f"explicit({len(self.values)} terms)"

    def quasianalytic_closed_form(self):
        """Analytic classification for the known families; None when unknown."""
        if self.kind == "gevrey":
            return False
        if self.kind == "log_pow":
            return self.param <= 1.0
        if self.kind == "constant_one":
            return True
        return None


def _require_terms(w, K, extra=0):
    top = w.max_index()
    if top is not None and top < K + extra:
        raise InsufficientTerms(
            f"need terms up to index {K + extra}, explicit sequence ends at {top}")


@dataclass(frozen=True)
class RegularityReport:
    checked_range: int
    m1_ok: bool
    m2_sup: float
    m2_sup_at: int
    m3_ok: bool
    m3_first_violation: int | None
    m4_nondecreasing: bool
    m4_first: float
    m4_last: float
    m4_growing: bool


def check_regular(w, K):
    """Verdicts for the four regularity conditions over k <= K (finite range;
    nothing here is a claim about all k)."""
    if K < 10:
        raise InsufficientTerms(f"regularity check needs K >= 10, got {K}")
    _require_terms(w, K, extra=1)
    m1_ok = abs(w.log_m(0)) <= _LOG_TOL and abs(w.log_m(1)) <= _LOG_TOL

    m2_sup = -math.inf
    m2_at = 0
    for k in range(1, K + 1):
        val = (w.log_m(k + 1) - w.log_m(k)) / k
        if val > m2_sup:
            m2_sup, m2_at = val, k

    m3_ok = True
    m3_first = None
    for k in range(1, K + 1):
        if 2 * w.log_m(k) > w.log_m(k - 1) + w.log_m(k + 1) + _LOG_TOL:
            m3_ok = False
            m3_first = k
            break

    roots = [w.log_m(k) / k for k in range(1, K + 1)]
    nondecreasing = all(b >= a - _LOG_TOL for a, b in zip(roots, roots[1:]))
    growing = nondecreasing and roots[-1] > roots[0] + 1e-9

    return RegularityReport(
        checked_range=K,
        m1_ok=m1_ok,
        m2_sup=math.exp(m2_sup),
        m2_sup_at=m2_at,
        m3_ok=m3_ok,
        m3_first_violation=m3_first,
        m4_nondecreasing=nondecreasing,
        m4_first=math.exp(roots[0]),
        m4_last=math.exp(roots[-1]),
        m4_growing=growing,
    )


@dataclass(frozen=True)
class QuasianalyticDiagnostics:
    checked_range: int
    partial_quarter: float
    partial_half: float
    partial_full: float
    increment_ratio: float       # (S_K - S_{K/2}) / (S_{K/2} - S_{K/4})
    tail_increment: float        # S_K - S_{K/2}
    closed_form_quasianalytic: bool | None


def quasianalytic_diag(w, K):
    """Partial sums of sum m_{k-1}/(k m_k) with tail-growth indicators."""
    if K < 100:
        raise InsufficientTerms(f"series diagnostics need K >= 100, got {K}")
    _require_terms(w, K)
    quarter, half = K // 4, K // 2
    s = 0.0
    s_quarter = s_half = 0.0
    for k in range(1, K + 1):
        s += math.exp(w.log_m(k - 1) - w.log_m(k)) / k
        if k == quarter:
            s_quarter = s
        if k == half:
            s_half = s
    lower = s_half - s_quarter
    ratio = (s - s_half) / lower if lower > 0 else math.inf
    return QuasianalyticDiagnostics(
        checked_range=K,
        partial_quarter=s_quarter,
        partial_half=s_half,
        partial_full=s,
        increment_ratio=ratio,
        tail_increment=s - s_half,
        closed_form_quasianalytic=w.quasianalytic_closed_form(),
    )


_STOP_STREAK = 10
_SCAN_CAP = 10 ** 6


def _log_assoc_weight(w, t):
    """log of inf_k t^k m_k for t > 0.

    The scan stops once the summand k*log(t) + log(m_k) has increased for 10
    consecutive k: legitimate because regular sequences eventually grow
    (m_k^(1/k) -> infinity), making the summand eventually increasing for any
    fixed t.
    """
    log_t = math.log(t)
    top = w.max_index()
    limit = _SCAN_CAP if top is None else top
    best = math.inf
    prev = None
    streak = 0
    for k in range(0, limit + 1):
        val = k * log_t + w.log_m(k)
        if val < best:
            best = val
        if prev is not None:
            streak = streak + 1 if val > prev else 0
        prev = val
        if streak >= _STOP_STREAK:
            return best
    raise NoStopReached(
        f"summand never increased {_STOP_STREAK} times in a row within {limit} terms")


def assoc_weight(w, t):
    """The associated weight h(t) = inf_k t^k m_k, with h(0) = 0."""
    if t < 0:
        raise NegativeArgument(f"associated weight needs t >= 0, got {t}")
    if t == 0:
        return 0.0
    return math.exp(_log_assoc_weight(w, t))


def recover_mk(w, k, t_grid):
    """Approximate m_k = sup_t h(t)/t^k over a grid in (0, 1].

    For log-convex sequences the grid supremum under-approximates m_k and
    converges from below as the grid refines.
    """
    t_grid = list(t_grid)
    if not t_grid:
        raise EmptyGrid("empty recovery grid")
    best = -math.inf
    for t in t_grid:
        if t <= 0 or t > 1:
            raise NegativeArgument(f"recovery grid must lie in (0, 1], got {t}")
        val = _log_assoc_weight(w, t) - k * math.log(t)
        if val > best:
            best = val
    return math.exp(best)


def log_grid(lo, hi, points):
    """Log-spaced grid endpoints included; hi is included exactly."""
    if points < 2 or lo <= 0 or hi <= lo:
        raise EmptyGrid(f"bad grid request ({lo}, {hi}, {points})")
    ratio = math.log(hi / lo)
    return [lo * math.exp(ratio * i / (points - 1)) for i in range(points - 1)] + [hi]


@dataclass(frozen=True)
class ComparisonReport:
    checked_range: int
    sup_root_ratio: float        # sup over 1 <= k <= K of (m_k/n_k)^(1/k)
    sup_at: int
    first: float
    mid: float
    last: float
    verdict: str                 # "bounded over range" | "growing over range"


def compare_sequences(a, b, K):
    """Trend check for a <= b in the weighted sense m_k <= Q^k n_k."""
    if K < 10:
        raise InsufficientTerms(f"comparison needs K >= 10, got {K}")
    _require_terms(a, K)
    _require_terms(b, K)
    logs = [(a.log_m(k) - b.log_m(k)) / k for k in range(1, K + 1)]
    sup = max(logs)
    sup_at = logs.index(sup) + 1
    mid = logs[K // 2 - 1]
    growing = logs[-1] > mid + _LOG_TOL and mid > logs[K // 4 - 1] + _LOG_TOL
    return ComparisonReport(
        checked_range=K,
        sup_root_ratio=math.exp(sup),
        sup_at=sup_at,
        first=math.exp(logs[0]),
        mid=math.exp(mid),
        last=math.exp(logs[-1]),
        verdict="growing over range" if growing else "bounded over range",
    )
