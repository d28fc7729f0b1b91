"""Exact jet calculus for CR submanifolds in graph form.

The package computes CR vector-field frames, iterated Lie derivatives of
characteristic forms, multiplier determinants, and finite/weak nondegeneracy
orders at the base point, all over exact Gaussian-rational coefficients; a
separate toolkit diagnoses Denjoy-Carleman weight sequences.
"""

from .errors import CRJetError
from .gaussrat import GaussianRational
from .jets import EXACT, Jet, JetMatrix, VarSig, jet_det, rank_at_zero
from .exprs import parse_expr, parse_text, render_jet
from .manifold import (
    ManifoldSpec,
    MapSpec,
    identity_map,
    load_manifold,
    load_map,
    parse_manifold_file,
)
from .frame import CRFrame, HoloForm, apply_L, apply_Lbar, build_frame, pair_theta
from .lie import (
    LieRow,
    LieSchedule,
    graded_multi_indices,
    lie_once,
    lie_power,
    lie_power_recursive,
    multiplier_det,
)
from .nondeg import (
    MapNondegReport,
    NondegReport,
    WeakReport,
    finite_order,
    map_finite_order,
    s_factor,
    search_multipliers,
    weak_check_first_codim,
    weak_check_hypersurface,
)
from .weights import (
    WeightSequence,
    assoc_weight,
    check_regular,
    compare_sequences,
    log_grid,
    quasianalytic_diag,
    recover_mk,
)

__version__ = "0.1.0"

__all__ = [
    "CRJetError",
    "GaussianRational",
    "EXACT",
    "Jet",
    "JetMatrix",
    "VarSig",
    "jet_det",
    "rank_at_zero",
    "parse_expr",
    "parse_text",
    "render_jet",
    "ManifoldSpec",
    "MapSpec",
    "identity_map",
    "load_manifold",
    "load_map",
    "parse_manifold_file",
    "CRFrame",
    "HoloForm",
    "apply_L",
    "apply_Lbar",
    "build_frame",
    "pair_theta",
    "LieRow",
    "LieSchedule",
    "graded_multi_indices",
    "lie_once",
    "lie_power",
    "lie_power_recursive",
    "multiplier_det",
    "NondegReport",
    "MapNondegReport",
    "WeakReport",
    "finite_order",
    "map_finite_order",
    "s_factor",
    "search_multipliers",
    "weak_check_first_codim",
    "weak_check_hypersurface",
    "WeightSequence",
    "assoc_weight",
    "check_regular",
    "compare_sequences",
    "log_grid",
    "quasianalytic_diag",
    "recover_mk",
]
