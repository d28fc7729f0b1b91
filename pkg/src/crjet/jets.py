"""Truncated multivariate power series ("jets") over the Gaussian rationals.

A jet lives in the variables (z_1..z_n, zb_1..zb_n, s_1..s_d) of a CR graph
chart and stores only terms of total degree <= work_order.  Every jet also
carries a valid_order: the largest degree up to which its coefficients are
guaranteed to agree with the exact function it truncates.  EXACT (= infinity)
marks jets that are known polynomials.  The calculus is deliberately
pessimistic - one derivative of a series correct to order K is only
trustworthy to K-1, and reciprocals or compositions are never better than the
truncation order - so that downstream rank decisions can refuse instead of
silently using starved coefficients.

Exponent vectors are bit-packed into a single integer (a fixed field per
variable), which makes the Cauchy-product inner loop an integer addition
instead of a tuple zip.  Multiplication, not memory, is the bottleneck here.
"""

from __future__ import annotations

from .errors import (
    InsufficientValidOrder,
    NonUnitConstantTerm,
    NonzeroConstantTermInImage,
    NotSquare,
    RaggedRows,
    SignatureMismatch,
    SizeLimitExceeded,
    UnknownVariable,
)
from .gaussrat import GaussianRational, ONE, ZERO

EXACT = float("inf")

# Bits per exponent field.  Work orders in practice stay far below 2**12 and
# packed fields never overflow each other under addition of two legal keys.
_W = 12
_MASK = (1 << _W) - 1

MAX_DET_SIZE = 8


class VarSig:
    """Variable signature of a chart: n CR variables (plus conjugates) and d
    real variables, in the canonical order (z_1..z_n, zb_1..zb_n, s_1..s_d)."""

    __slots__ = ("n", "d")

    def __init__(self, n, d):
        if n < 1 or d < 1:
            raise SignatureMismatch(f"need n >= 1 and d >= 1, got n={n}, d={d}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("VarSig is immutable")

    @property
    def nvars(self):
        return 2 * self.n + self.d

    def __eq__(self, other):
        return isinstance(other, VarSig) and self.n == other.n and self.d == other.d

    def __hash__(self):
        return hash((self.n, self.d))

    def __repr__(self):
        return f"VarSig(n={self.n}, d={self.d})"

    # -- slot layout (all 1-based on the math side) -------------------------

    def z_slot(self, j):
        if not 1 <= j <= self.n:
            raise UnknownVariable(f"z{j} not in signature {self!r}")
        return j - 1

    def zb_slot(self, j):
        if not 1 <= j <= self.n:
            raise UnknownVariable(f"zb{j} not in signature {self!r}")
        return self.n + j - 1

    def s_slot(self, m):
        if not 1 <= m <= self.d:
            raise UnknownVariable(f"s{m} not in signature {self!r}")
        return 2 * self.n + m - 1

    def var_name(self, slot):
        n = self.n
        if slot < n:
            return f"z{slot + 1}"
        if slot < 2 * n:
            return f"zb{slot - n + 1}"
        return f"s{slot - 2 * n + 1}"

    # -- packed exponent keys ------------------------------------------------

    def pack(self, exps):
        if len(exps) != self.nvars:
            raise SignatureMismatch(
                f"exponent vector of length {len(exps)} for {self.nvars} variables")
        key = 0
        for i, e in enumerate(exps):
            if e < 0:
                raise SignatureMismatch("negative exponent")
            key |= e << (_W * i)
        return key

    def unpack(self, key):
        return tuple((key >> (_W * i)) & _MASK for i in range(self.nvars))

    def key_degree(self, key):
        deg = 0
        while key:
            deg += key & _MASK
            key >>= _W
        return deg

    def swap_conjugate_blocks(self, key):
        n_bits = _W * self.n
        zmask = (1 << n_bits) - 1
        z = key & zmask
        zb = (key >> n_bits) & zmask
        rest = key >> (2 * n_bits)
        return (zb) | (z << n_bits) | (rest << (2 * n_bits))


def _as_coeff(c):
    if isinstance(c, GaussianRational):
        return c
    return GaussianRational(c)


class Jet:
    """One truncated series.  Immutable after construction."""

    __slots__ = ("sig", "work_order", "valid_order", "terms", "_bydeg")

    def __init__(self, sig, work_order, terms, valid_order):
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "work_order", work_order)
        object.__setattr__(self, "valid_order", valid_order)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_bydeg", None)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def _make(cls, sig, work_order, raw_terms, valid_order):
        terms = {k: c for k, c in raw_terms.items() if c}
        return cls(sig, work_order, terms, valid_order)

    @classmethod
    def zero(cls, sig, work_order, valid_order=EXACT):
        return cls(sig, work_order, {}, valid_order)

    @classmethod
    def const(cls, sig, work_order, value):
        value = _as_coeff(value)
        return cls(sig, work_order, {0: value} if value else {}, EXACT)

    @classmethod
    def variable(cls, sig, work_order, slot):
        if not 0 <= slot < sig.nvars:
            raise UnknownVariable(f"variable slot {slot} outside signature {sig!r}")
        if work_order >= 1:
            return cls(sig, work_order, {1 << (_W * slot): ONE}, EXACT)
        return cls(sig, work_order, {}, work_order)

    @classmethod
    def from_coeffs(cls, sig, work_order, coeffs, valid_order=EXACT):
        """coeffs maps exponent tuples to coefficients; truncated at work_order."""
        terms = {}
        for exps, c in coeffs.items():
            if sum(exps) > work_order:
                continue
            c = _as_coeff(c)
            if c:
                terms[sig.pack(exps)] = c
        return cls(sig, work_order, terms, valid_order)

    # -- inspection ------------------------------------------------------------

    def coefficient(self, exps):
        return self.terms.get(self.sig.pack(exps), ZERO)

    def iter_terms(self):
        """Yield (exponent tuple, coefficient) in graded-lex order: ascending
        total degree, then descending lexicographic in the canonical variable
        order (z1 before zb1 before s1)."""
        sig = self.sig
        items = [(sig.key_degree(k), sig.unpack(k), c) for k, c in self.terms.items()]
        items.sort(key=lambda t: (t[0], tuple(-e for e in t[1])))
        for _, exps, c in items:
            yield exps, c

    def is_stored_zero(self):
        return not self.terms

    def max_stored_degree(self):
        if not self.terms:
            return 0
        return max(self.sig.key_degree(k) for k in self.terms)

    def constant_term(self):
        return self.terms.get(0, ZERO)

    def has_linear_part(self):
        return any(self.sig.key_degree(k) == 1 for k in self.terms)

    def eval0(self):
        if self.valid_order < 0:
            raise InsufficientValidOrder(
                "constant term requested from a jet with negative valid order")
        return self.constant_term()

    def _sorted_by_degree(self):
        cached = self._bydeg
        if cached is None:
            sig = self.sig
            cached = sorted(
                ((sig.key_degree(k), k, c) for k, c in self.terms.items()),
                key=lambda t: (t[0], t[1]))
            object.__setattr__(self, "_bydeg", cached)
        return cached

    # -- equality (up to the common valid order) -------------------------------

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        if self.sig != other.sig:
            return False
        bound = min(self.valid_order, other.valid_order)
        sig = self.sig
        for k, c in self.terms.items():
            if sig.key_degree(k) <= bound and other.terms.get(k) != c:
                return False
        for k, c in other.terms.items():
            if sig.key_degree(k) <= bound and k not in self.terms:
                return False
        return True

    __hash__ = None

    def __repr__(self):
        nt = len(self.terms)
        v = "EXACT" if self.valid_order == EXACT else self.valid_order
        return f"<Jet {nt} terms, K={self.work_order}, valid={v}>"

    # -- ring operations ---------------------------------------------------------

    def _check_compatible(self, other):
        if self.sig != other.sig or self.work_order != other.work_order:
            raise SignatureMismatch(
                f"incompatible jets: {self.sig!r}@{self.work_order} "
                f"vs {other.sig!r}@{other.work_order}")

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.const(self.sig, self.work_order, other)
        self._check_compatible(other)
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) \
            else (other.terms, self.terms)
        out = dict(big)
        for k, c in small.items():
            cur = out.get(k)
            s = c if cur is None else cur + c
            if s:
                out[k] = s
            elif cur is not None:
                del out[k]
        return Jet(self.sig, self.work_order, out,
                   min(self.valid_order, other.valid_order))

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet.const(self.sig, self.work_order, other)
        return self + (-other)

    def __neg__(self):
        return Jet(self.sig, self.work_order,
                   {k: -c for k, c in self.terms.items()}, self.valid_order)

    def scale(self, c):
        c = _as_coeff(c)
        if not c:
            return Jet(self.sig, self.work_order, {}, self.valid_order)
        return Jet(self.sig, self.work_order,
                   {k: v * c for k, v in self.terms.items()}, self.valid_order)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check_compatible(other)
        K = self.work_order
        out = {}
        a = self._sorted_by_degree()
        b = other._sorted_by_degree()
        if len(a) > len(b):
            a, b = b, a
        for da, ka, ca in a:
            limit = K - da
            for db, kb, cb in b:
                if db > limit:
                    break
                k = ka + kb
                p = ca * cb
                cur = out.get(k)
                s = p if cur is None else cur + p
                if s:
                    out[k] = s
                elif cur is not None:
                    del out[k]
        if self.valid_order == EXACT and other.valid_order == EXACT:
            true_deg = self.max_stored_degree() + other.max_stored_degree()
            if self.is_stored_zero() or other.is_stored_zero() or true_deg <= K:
                valid = EXACT
            else:
                valid = K
        else:
            valid = min(self.valid_order, other.valid_order)
        return Jet(self.sig, K, out, valid)

    __rmul__ = __mul__

    def power(self, e):
        if e < 0:
            raise SignatureMismatch("negative power of a jet")
        result = Jet.const(self.sig, self.work_order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e = base_needed
        return result

    # -- derivations and conjugation -------------------------------------------

    def derive(self, slot):
        if not 0 <= slot < self.sig.nvars:
            raise UnknownVariable(f"variable slot {slot} outside signature {self.sig!r}")
        shift = _W * slot
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - (1 << shift)] = c * e
        valid = EXACT if self.valid_order == EXACT else self.valid_order - 1
        return Jet(self.sig, self.work_order, out, valid)

    def conjugate(self):
        sig = self.sig
        out = {sig.swap_conjugate_blocks(k): c.conjugate() for k, c in self.terms.items()}
        return Jet(sig, self.work_order, out, self.valid_order)

    # -- reciprocal and substitution ----------------------------------------------

    def reciprocal(self):
        c0 = self.constant_term()
        if not c0:
            raise NonUnitConstantTerm("reciprocal of a jet with zero constant term")
        K = self.work_order
        g = Jet.const(self.sig, K, c0.inverse())
        two = Jet.const(self.sig, K, 2)
        correct = 0
        # Newton iteration g <- g(2 - f g) doubles the correct order each step.
        while correct < K:
            g = g * (two - self * g)
            correct = 2 * correct + 1
        valid = K if self.valid_order == EXACT else min(self.valid_order, K)
        return Jet(self.sig, K, g.terms, valid)

    def divide(self, other):
        return self * other.reciprocal()

    def substitute(self, images):
        """Formal composition: replace the i-th variable of this jet by
        images[i].  Every image must share one source signature and work
        order and have zero constant term (the base point is preserved)."""
        if len(images) != self.sig.nvars:
            raise SignatureMismatch(
                f"{self.sig.nvars} images required, got {len(images)}")
        src_sig = images[0].sig
        src_K = images[0].work_order
        min_img_valid = EXACT
        for g in images:
            if g.sig != src_sig or g.work_order != src_K:
                raise SignatureMismatch("images do not share signature/work order")
            if g.constant_term():
                raise NonzeroConstantTermInImage(
                    "substitution image has nonzero constant term")
            min_img_valid = min(min_img_valid, g.valid_order)
        pow_cache = {}

        def img_pow(slot, e):
            got = pow_cache.get((slot, e))
            if got is not None:
                return got
            if e == 1:
                val = images[slot]
            else:
                half = img_pow(slot, e // 2)
                val = half * half
                if e % 2:
                    val = val * images[slot]
            pow_cache[(slot, e)] = val
            return val

        acc = {}
        sig = self.sig
        for k, c in self.terms.items():
            if sig.key_degree(k) > src_K:
                continue  # images vanish at 0, so this term contributes nothing
            prod = None
            for slot in range(sig.nvars):
                e = (k >> (_W * slot)) & _MASK
                if e:
                    p = img_pow(slot, e)
                    prod = p if prod is None else prod * p
            if prod is None:
                cur = acc.get(0)
                s = c if cur is None else cur + c
                acc[0] = s
            else:
                for k2, c2 in prod.terms.items():
                    p = c * c2
                    cur = acc.get(k2)
                    acc[k2] = p if cur is None else cur + p
        valid = min(self.valid_order, min_img_valid, src_K)
        return Jet._make(src_sig, src_K, acc, valid)

    # -- monomial division (s-factor extraction and factored forms) ----------------

    def divisible_by_monomial(self, exps):
        key = self.sig.pack(exps)
        for k in self.terms:
            for i in range(self.sig.nvars):
                sh = _W * i
                if ((k >> sh) & _MASK) < ((key >> sh) & _MASK):
                    return False
        return True

    def divide_monomial(self, exps):
        key = self.sig.pack(exps)
        if not self.divisible_by_monomial(exps):
            raise SignatureMismatch("stored terms not divisible by requested monomial")
        deg = sum(exps)
        out = {k - key: c for k, c in self.terms.items()}
        valid = EXACT if self.valid_order == EXACT else self.valid_order - deg
        return Jet(self.sig, self.work_order, out, valid)

    def with_valid_order(self, valid):
        return Jet(self.sig, self.work_order, self.terms, valid)


class JetMatrix:
    """Rectangular grid of jets over one signature and work order."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            first = rows[0][0] if width else None
            for r in rows:
                if len(r) != width:
                    raise RaggedRows("matrix rows of unequal length")
                for entry in r:
                    if first is not None:
                        entry._check_compatible(first)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("JetMatrix is immutable")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def det(self):
        return jet_det(self.rows)


def jet_det(rows):
    """Determinant by cofactor expansion.

    Division-based elimination is unsound here: the truncated jet ring has
    zero divisors.  Sizes are tiny (N = n + d <= 8), so cofactors win.
    """
    nr = len(rows)
    if any(len(r) != nr for r in rows):
        raise NotSquare(f"determinant of a non-square matrix ({nr} rows)")
    if nr == 0:
        raise NotSquare("determinant of an empty matrix")
    if nr > MAX_DET_SIZE:
        raise SizeLimitExceeded(f"determinant size {nr} exceeds limit {MAX_DET_SIZE}")
    valid_min = min(e.valid_order for r in rows for e in r)
    result = _cofactor(list(map(list, rows)))
    if result.valid_order > valid_min:
        result = result.with_valid_order(valid_min)
    return result


def _cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j, entry in enumerate(rows[0]):
        if entry.is_stored_zero():
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        term = entry * _cofactor(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        first = rows[0][0]
        return Jet.zero(first.sig, first.work_order)
    return acc


class RowReducer:
    """Incremental exact Gaussian elimination over the Gaussian rationals.

    Rows are scalar vectors (values at the base point), never jets: the rank
    decision is the pointwise span condition and must stay enumeration-free
    and exact.
    """

    def __init__(self, width):
        self.width = width
        self.echelon = []  # list of (pivot_col, row)

    def _reduce(self, row):
        row = list(row)
        for pivot_col, basis in self.echelon:
            c = row[pivot_col]
            if c:
                f = c / basis[pivot_col]
                for i in range(pivot_col, self.width):
                    row[i] = row[i] - f * basis[i]
        return row

    def add(self, row):
        """Insert a row; returns True when it enlarged the span."""
        if len(row) != self.width:
            raise RaggedRows(f"row of length {len(row)}, expected {self.width}")
        row = self._reduce([_as_coeff(c) for c in row])
        for col in range(self.width):
            if row[col]:
                self.echelon.append((col, row))
                self.echelon.sort(key=lambda t: t[0])
                return True
        return False

    @property
    def rank(self):
        return len(self.echelon)


def rank_at_zero(rows):
    """Exact rank of a family of coefficient-row vectors."""
    rows = list(rows)
    if not rows:
        return 0
    reducer = RowReducer(len(rows[0]))
    for row in rows:
        reducer.add(row)
    return reducer.rank
