"""Manifold description files and validated input specifications.

A generic CR submanifold is described in graph form: Im w = phi(z, zb, Re w)
with phi real-valued, phi(0) = 0 and grad phi(0) = 0.  The file format is
line oriented:

    # sphere in C^2
    [manifold]
    n = 1
    d = 1
    order = 8
    phi1 = z1*zb1
    gamma1 = 0          # optional factored-form exponents, one per codimension

    [map]               # optional: a CR map into a second generic target
    rho1 = -1/2*i*Zp2 + 1/2*i*Zbp2 - Zp1*Zbp1
    H1 = z1
    H2 = s1 + i*z1*zb1

Reality and base-point vanishing of each phi are enforced at load time, not
assumed: the entire frame construction downstream is only valid for real
defining functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BasePointViolation, FormatError, RealityViolation
from .exprs import parse_expr
from .gaussrat import GaussianRational, Rat
from .jets import Jet, VarSig


@dataclass(frozen=True, eq=False)
class ManifoldSpec:
    sig: VarSig
    work_order: int
    phi: tuple          # d jets, the full graph-form right-hand sides
    phi_text: tuple
    gamma: tuple | None  # d exponent vectors (length d each), or None
    source: str = field(default="<memory>")

    @property
    def n(self):
        return self.sig.n

    @property
    def d(self):
        return self.sig.d

    @classmethod
    def from_exprs(cls, n, d, order, phi_texts, gamma=None, source="<memory>"):
        if len(phi_texts) != d:
            raise FormatError(f"{d} defining functions required, got {len(phi_texts)}")
        sig = VarSig(n, d)
        phi = tuple(parse_expr(t, sig, order) for t in phi_texts)
        spec = cls(sig, order, phi, tuple(phi_texts), _norm_gamma(gamma, d), source)
        spec.validate()
        return spec

    def validate(self):
        for mu, f in enumerate(self.phi, start=1):
            if f.conjugate().terms != f.terms:
                raise RealityViolation(f"phi{mu} is not real-valued")
            if f.constant_term():
                raise BasePointViolation(f"phi{mu}(0) != 0")
            if f.has_linear_part():
                raise BasePointViolation(f"phi{mu} has a nonzero linear part at 0")
        if self.gamma is not None:
            if len(self.gamma) != self.d:
                raise FormatError("one gamma exponent vector per codimension required")
            for mu, g in enumerate(self.gamma, start=1):
                if len(g) != self.d or any(e < 0 for e in g):
                    raise FormatError(f"gamma{mu} must be {self.d} nonnegative integers")
                if not self.phi[mu - 1].divisible_by_monomial(self._s_monomial(g)):
                    raise FormatError(
                        f"phi{mu} is not divisible by the declared power s^gamma{mu}")

    def _s_monomial(self, gamma_vec):
        exps = [0] * self.sig.nvars
        for m, e in enumerate(gamma_vec, start=1):
            exps[self.sig.s_slot(m)] = e
        return tuple(exps)

    def inner_phi(self, mu):
        """phi_mu with the declared power of s divided out (1-based mu)."""
        if self.gamma is None:
            raise FormatError("no factored-form exponents declared")
        return self.phi[mu - 1].divide_monomial(self._s_monomial(self.gamma[mu - 1]))


@dataclass(frozen=True, eq=False)
class MapSpec:
    source_manifold: ManifoldSpec
    target_sig: VarSig   # n = N', plus one unused real slot
    n_target: int        # N': number of target coordinates
    d_target: int        # d': number of target defining functions
    rho: tuple           # d' jets over target_sig
    rho_text: tuple
    components: tuple    # N' jets over the source signature
    components_text: tuple

    @classmethod
    def from_exprs(cls, manifold, rho_texts, h_texts):
        n_target = len(h_texts)
        d_target = len(rho_texts)
        if d_target < 1 or n_target < 1:
            raise FormatError("a map needs at least one rho and one H entry")
        if d_target > n_target:
            raise FormatError(
                f"{d_target} target defining functions for only {n_target} components")
        target_sig = VarSig(n_target, 1)
        order = manifold.work_order
        rho = tuple(parse_expr(t, target_sig, order, vocabulary="target")
                    for t in rho_texts)
        comps = tuple(parse_expr(t, manifold.sig, order) for t in h_texts)
        spec = cls(manifold, target_sig, n_target, d_target, rho, tuple(rho_texts),
                   comps, tuple(h_texts))
        spec.validate()
        return spec

    def validate(self):
        for l, r in enumerate(self.rho, start=1):
            if r.conjugate().terms != r.terms:
                raise RealityViolation(f"rho{l} is not real-valued")
            if r.constant_term():
                raise BasePointViolation(f"rho{l}(0) != 0: target base point not on target")
        for l, h in enumerate(self.components, start=1):
            if h.constant_term():
                raise BasePointViolation(f"H{l}(0) != 0: base point must map to base point")


def identity_map(manifold):
    """The identity of a manifold written as a CR map into its own ambient
    space: target coordinates (Z_1..Z_n, W_1..W_d), defining functions
    Im W_mu - phi_mu, components H = (z, s + i phi)."""
    sig, K = manifold.sig, manifold.work_order
    n, d = manifold.n, manifold.d
    tsig = VarSig(n + d, 1)
    half = GaussianRational(Rat(1, 2))
    minus_i_half = GaussianRational(0, Rat(-1, 2))

    # source chart variables written in the target coordinates:
    # z_j -> Z_j, zb_j -> conj Z_j, s_mu -> Re W_mu = (W_mu + conj W_mu)/2
    src_imgs = [None] * sig.nvars
    for j in range(1, n + 1):
        src_imgs[sig.z_slot(j)] = Jet.variable(tsig, K, tsig.z_slot(j))
        src_imgs[sig.zb_slot(j)] = Jet.variable(tsig, K, tsig.zb_slot(j))
    for m in range(1, d + 1):
        w = Jet.variable(tsig, K, tsig.z_slot(n + m))
        wb = Jet.variable(tsig, K, tsig.zb_slot(n + m))
        src_imgs[sig.s_slot(m)] = (w + wb).scale(half)

    rho = []
    for m in range(1, d + 1):
        w = Jet.variable(tsig, K, tsig.z_slot(n + m))
        wb = Jet.variable(tsig, K, tsig.zb_slot(n + m))
        im_w = (w - wb).scale(minus_i_half)  # (W - conj W) / (2i)
        rho.append(im_w - manifold.phi[m - 1].substitute(src_imgs))
    comps = []
    comps_text = []
    for j in range(1, n + 1):
        comps.append(Jet.variable(sig, K, sig.z_slot(j)))
        comps_text.append(f"z{j}")
    i_unit = GaussianRational(0, 1)
    for m in range(1, d + 1):
        comps.append(Jet.variable(sig, K, sig.s_slot(m)) + manifold.phi[m - 1].scale(i_unit))
        comps_text.append(f"s{m} + i*phi{m}")
    spec = MapSpec(manifold, tsig, n + d, d, tuple(rho),
                   tuple(f"Im W{m} - phi{m}" for m in range(1, d + 1)),
                   tuple(comps), tuple(comps_text))
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# file format


def _strip_comment(line):
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_manifold_file(text, source="<memory>"):
    """Parse the full file; returns (ManifoldSpec, MapSpec or None)."""
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FormatError(f"line {lineno}: malformed section header {line!r}")
            name = line[1:-1].strip()
            if name not in ("manifold", "map"):
                raise FormatError(f"line {lineno}: unknown section [{name}]")
            if name in sections:
                raise FormatError(f"line {lineno}: duplicate section [{name}]")
            current = sections.setdefault(name, {})
            continue
        if current is None:
            raise FormatError(f"line {lineno}: content before [manifold] header")
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in current:
            raise FormatError(f"line {lineno}: duplicate key {key!r}")
        current[key] = value

    if "manifold" not in sections:
        raise FormatError("missing [manifold] section")
    mf = sections["manifold"]
    n = _int_key(mf, "n")
    d = _int_key(mf, "d")
    order = _int_key(mf, "order")
    if order < 1:
        raise FormatError("order must be >= 1")
    phi_texts = _numbered(mf, "phi", d)
    gamma = None
    if any(k.startswith("gamma") for k in mf):
        gamma_texts = _numbered(mf, "gamma", d)
        gamma = tuple(_exponent_vector(t, d) for t in gamma_texts)
    known = {"n", "d", "order"} | {f"phi{i}" for i in range(1, d + 1)} \
        | {f"gamma{i}" for i in range(1, d + 1)}
    extra = set(mf) - known
    if extra:
        raise FormatError(f"unknown keys in [manifold]: {sorted(extra)}")
    manifold = ManifoldSpec.from_exprs(n, d, order, phi_texts, gamma, source)

    map_spec = None
    if "map" in sections:
        mp = sections["map"]
        rho_texts = _numbered_open(mp, "rho")
        h_texts = _numbered_open(mp, "H")
        extra = set(mp) - {f"rho{i}" for i in range(1, len(rho_texts) + 1)} \
            - {f"H{i}" for i in range(1, len(h_texts) + 1)}
        if extra:
            raise FormatError(f"unknown keys in [map]: {sorted(extra)}")
        map_spec = MapSpec.from_exprs(manifold, rho_texts, h_texts)
    return manifold, map_spec


def load_manifold(path):
    manifold, _ = parse_manifold_file(_read(path), source=str(path))
    return manifold


def load_map(path):
    manifold, map_spec = parse_manifold_file(_read(path), source=str(path))
    if map_spec is None:
        raise FormatError(f"{path}: no [map] section present")
    return map_spec


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def _int_key(section, key):
    if key not in section:
        raise FormatError(f"missing key {key!r}")
    try:
        return int(section[key])
    except ValueError:
        raise FormatError(f"key {key!r} must be an integer, got {section[key]!r}") from None


def _numbered(section, prefix, count):
    out = []
    for i in range(1, count + 1):
        key = f"{prefix}{i}"
        if key not in section:
            raise FormatError(f"missing key {key!r}")
        out.append(section[key])
    return out


def _numbered_open(section, prefix):
    out = []
    i = 1
    while f"{prefix}{i}" in section:
        out.append(section[f"{prefix}{i}"])
        i += 1
    if not out:
        raise FormatError(f"no {prefix}1 entry in [map]")
    return out


def _exponent_vector(text, d):
    parts = [p.strip() for p in text.split(",")] if "," in text else [text.strip()]
    if len(parts) != d:
        raise FormatError(f"gamma vectors must have {d} entries, got {text!r}")
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise FormatError(f"gamma entries must be integers, got {text!r}") from None
    return vec


def _norm_gamma(gamma, d):
    if gamma is None:
        return None
    return tuple(tuple(int(e) for e in g) for g in gamma)
