"""curvtool: algebraic curvature tensors, their skew-operator spectra, exact
quotient-ring divisibility tools, explicit 3-metric curvature checks, and a
residual-minimization search over the curvature-symmetry space."""

from ._kernels import BACKEND as kernel_backend
from .curvature import (
    CurvatureTensor,
    EigenStructure,
    IPReport,
    bianchi_residuals,
    constant_curvature,
    curvature_operator,
    eigenvalue_structure,
    is_ip,
    plane_operator,
    r_phi,
    ricci,
    tensor_from_text,
    tensor_to_text,
    wedge_norm,
)
from .errors import CurvtoolError
from .linalg import (
    OrientedPlane,
    numeric_rank,
    random_orthonormal_pair,
    singular_values,
    sym_eigen,
)
from .metrics3 import (
    WarpedProduct,
    conformal_flat_residual,
    closed_form_residual,
    frame_curvature,
    h_evolution_check,
    milnor_ricci,
    named_chart,
    phi_profile_check,
    ricci_report,
    second_bianchi_frame_check,
    trace_h_residual,
    warped_curvature,
)
from .normed_maps import BilinearMap7, build_u, kx_dimension, octonion_cross
from .proof_kit import (
    NormalFormFamily,
    cc0_probe,
    cubic_pencil_residuals,
    g_operator,
    m_identity_residual,
    singular_triple_check,
    w_operator,
)
from .quotient_ring import (
    MultiPoly,
    QuotElem,
    format_element,
    minor_divisibility_check,
    mul,
    parse_element,
    tbar_divide,
    tbar_valuation,
)
from .search import Candidate, SearchConfig, SearchResult, run_search

__version__ = "0.1.0"

__all__ = [
    "BilinearMap7",
    "Candidate",
    "CurvatureTensor",
    "CurvtoolError",
    "EigenStructure",
    "IPReport",
    "MultiPoly",
    "NormalFormFamily",
    "OrientedPlane",
    "QuotElem",
    "SearchConfig",
    "SearchResult",
    "WarpedProduct",
    "bianchi_residuals",
    "build_u",
    "cc0_probe",
    "closed_form_residual",
    "conformal_flat_residual",
    "constant_curvature",
    "cubic_pencil_residuals",
    "curvature_operator",
    "eigenvalue_structure",
    "format_element",
    "frame_curvature",
    "g_operator",
    "h_evolution_check",
    "is_ip",
    "kernel_backend",
    "kx_dimension",
    "m_identity_residual",
    "milnor_ricci",
    "minor_divisibility_check",
    "mul",
    "named_chart",
    "numeric_rank",
    "octonion_cross",
    "parse_element",
    "phi_profile_check",
    "plane_operator",
    "r_phi",
    "random_orthonormal_pair",
    "ricci",
    "ricci_report",
    "run_search",
    "second_bianchi_frame_check",
    "singular_triple_check",
    "singular_values",
    "sym_eigen",
    "tbar_divide",
    "tbar_valuation",
    "tensor_from_text",
    "tensor_to_text",
    "trace_h_residual",
    "w_operator",
    "warped_curvature",
    "wedge_norm",
    "__version__",
]
