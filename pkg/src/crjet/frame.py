"""CR vector-field frame of a graph-form manifold.

For Im w = phi(z, zb, s) the CR bundle is spanned by

    L_j = d/dzb_j - sum_mu b[j][mu] d/ds_mu,

where b[j][mu] = i det(B_j_mu) / det(Phi), Phi is the d x d matrix
I + i dphi/ds, and B_j_mu is Phi with its mu-th column replaced by the
column of dzb_j-derivatives of phi.  The characteristic bundle is spanned by

    theta^mu = ds_mu + sum_j b[j][mu] dzb_j + sum_j conj(b[j][mu]) dz_j,

and together with omega^j = dz_j these span the holomorphic forms.

The frame also precomputes the Levi-type tensor

    levi[j][k][mu] = L_k conj(b[j][mu]) - Lbar_j b[k][mu]

which every Lie-derivative step consumes.  The general determinant formula is
the only code path, even for hypersurfaces; the d = 1 closed form serves as a
test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, IntegrabilityViolation, NonUnitDeterminant
from .gaussrat import GaussianRational, I as IMAG
from .jets import Jet, jet_det


@dataclass(frozen=True, eq=False)
class HoloForm:
    """A holomorphic one-form as a coefficient row over (theta^1..theta^d,
    omega^1..omega^n)."""
    theta: tuple  # d jets
    omega: tuple  # n jets

    def row(self):
        return self.theta + self.omega


class CRFrame:
    """Immutable frame data for one manifold; safe for concurrent reads.

    The attached Lie-row cache is filled idempotently (recomputation yields
    identical values), so racing fills are harmless.
    """

    def __init__(self, spec, coeffs, coeffs_conj, s_jacobian, det_phi, det_phi_inv, levi):
        self.spec = spec
        self.sig = spec.sig
        self.work_order = spec.work_order
        self.coeffs = coeffs            # b[j][mu], n x d, 0-based
        self.coeffs_conj = coeffs_conj
        self.s_jacobian = s_jacobian    # dphi_mu/ds_nu, d x d
        self.det_phi = det_phi
        self.det_phi_inv = det_phi_inv
        self.levi = levi                # levi[j][k][mu], n x n x d
        self._row_cache = {}

    @property
    def n(self):
        return self.sig.n

    @property
    def d(self):
        return self.sig.d


def build_frame(spec):
    """Construct the frame from a validated manifold; verifies integrability
    and conjugation antisymmetry, raising instead of warning on failure."""
    sig = spec.sig
    n, d, K = sig.n, sig.d, spec.work_order
    phi = spec.phi

    s_jac = [[phi[mu].derive(sig.s_slot(nu + 1)) for nu in range(d)] for mu in range(d)]
    one = Jet.const(sig, K, 1)
    phi_cols = [[_delta(sig, K, mu, nu) + s_jac[mu][nu].scale(IMAG) for mu in range(d)]
                for nu in range(d)]  # phi_cols[nu] is the nu-th column of Phi
    det_phi = jet_det([[phi_cols[nu][mu] for nu in range(d)] for mu in range(d)])
    if not det_phi.constant_term():
        raise NonUnitDeterminant("det(I + i dphi/ds) vanishes at 0")
    det_phi_inv = det_phi.reciprocal()

    coeffs = []
    for j in range(n):
        zb = sig.zb_slot(j + 1)
        phi_zb = [phi[mu].derive(zb) for mu in range(d)]
        row = []
        for mu in range(d):
            cols = [phi_zb if nu == mu else phi_cols[nu] for nu in range(d)]
            b_matrix = [[cols[nu][r] for nu in range(d)] for r in range(d)]
            row.append((jet_det(b_matrix) * det_phi_inv).scale(IMAG))
        coeffs.append(row)
    coeffs_conj = [[b.conjugate() for b in row] for row in coeffs]

    frame = CRFrame(spec, coeffs, coeffs_conj, s_jac, det_phi, det_phi_inv, levi=None)

    levi = [[[apply_L(frame, k + 1, coeffs_conj[j][mu])
              - apply_Lbar(frame, j + 1, coeffs[k][mu])
              for mu in range(d)]
             for k in range(n)]
            for j in range(n)]
    frame.levi = levi

    _verify(frame)
    return frame


def _delta(sig, K, mu, nu):
    return Jet.const(sig, K, 1 if mu == nu else 0)


def _verify(frame):
    n, d = frame.n, frame.d
    for j in range(n):
        for mu in range(d):
            if frame.coeffs[j][mu].eval0():
                raise IntegrabilityViolation(
                    f"b[{j + 1}][{mu + 1}](0) != 0; input violates grad phi(0) = 0")
    for j in range(n):
        for k in range(j + 1, n):
            for mu in range(d):
                lhs = apply_L(frame, j + 1, frame.coeffs[k][mu])
                rhs = apply_L(frame, k + 1, frame.coeffs[j][mu])
                if lhs != rhs:
                    raise IntegrabilityViolation(
                        f"L_{j + 1} b[{k + 1}][{mu + 1}] != L_{k + 1} b[{j + 1}][{mu + 1}]")
    for j in range(n):
        for k in range(n):
            for mu in range(d):
                if frame.levi[j][k][mu].conjugate() != -frame.levi[k][j][mu]:
                    raise IntegrabilityViolation(
                        "conjugation antisymmetry of the Levi tensor fails")


def apply_L(frame, j, f):
    """Apply L_j = d/dzb_j - sum_mu b[j][mu] d/ds_mu to a jet (1-based j)."""
    if not 1 <= j <= frame.n:
        raise IndexOutOfRange(f"CR direction {j} outside 1..{frame.n}")
    out = f.derive(frame.sig.zb_slot(j))
    for mu in range(frame.d):
        out = out - frame.coeffs[j - 1][mu] * f.derive(frame.sig.s_slot(mu + 1))
    return out


def apply_Lbar(frame, j, f):
    """Apply the conjugate field Lbar_j = d/dz_j - sum_mu conj(b[j][mu]) d/ds_mu."""
    if not 1 <= j <= frame.n:
        raise IndexOutOfRange(f"CR direction {j} outside 1..{frame.n}")
    out = f.derive(frame.sig.z_slot(j))
    for mu in range(frame.d):
        out = out - frame.coeffs_conj[j - 1][mu] * f.derive(frame.sig.s_slot(mu + 1))
    return out


def pair_theta(frame, mu, field):
    """Pair theta^mu with a frame field.

    field is ("L", j) or ("Lbar", j); the coordinate pairing ("s", nu) with
    d/ds_nu is provided as a diagnostic.
    """
    kind, idx = field
    if not 1 <= mu <= frame.d:
        raise IndexOutOfRange(f"characteristic index {mu} outside 1..{frame.d}")
    sig, K = frame.sig, frame.work_order
    if kind == "L":
        if not 1 <= idx <= frame.n:
            raise IndexOutOfRange(f"CR direction {idx} outside 1..{frame.n}")
        ds_part = -frame.coeffs[idx - 1][mu - 1]   # ds_mu(L_j)
        dzb_part = frame.coeffs[idx - 1][mu - 1]   # b[j][mu] * dzb_j(L_j)
        return ds_part + dzb_part
    if kind == "Lbar":
        if not 1 <= idx <= frame.n:
            raise IndexOutOfRange(f"CR direction {idx} outside 1..{frame.n}")
        ds_part = -frame.coeffs_conj[idx - 1][mu - 1]
        dz_part = frame.coeffs_conj[idx - 1][mu - 1]
        return ds_part + dz_part
    if kind == "s":
        if not 1 <= idx <= frame.d:
            raise IndexOutOfRange(f"real direction {idx} outside 1..{frame.d}")
        return Jet.const(sig, K, 1 if idx == mu else 0)
    raise IndexOutOfRange(f"unknown field kind {kind!r}")


def characteristic_row(frame, mu):
    """theta^mu as a HoloForm (the identity coefficient row)."""
    sig, K = frame.sig, frame.work_order
    theta = tuple(Jet.const(sig, K, 1 if tau == mu - 1 else 0) for tau in range(frame.d))
    omega = tuple(Jet.const(sig, K, 0) for _ in range(frame.n))
    return HoloForm(theta, omega)
