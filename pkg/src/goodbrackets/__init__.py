"""Good brackets of control-affine systems, decided exactly.

Truncated free-algebra arithmetic, Hall bases and PBW straightening, moment
matrices with exact PSD certificates, the flow/oscillation experiment, and
the application templates, all over rational numbers.
"""

from .algebra import (
    GradedComponent,
    TruncSeries,
    ad_pow,
    adjoint,
    bracket,
    exp_trunc,
    format_word,
    inverse,
    log_trunc,
    project_degree,
    with_bound,
    words_of_degree,
)
from .appsys import (
    ExtendedSystemSpec,
    PolyMap,
    Subspace,
    kalman_subspaces,
    phi_map,
    scalar_extension,
    step3_extension,
)
from .certify import (
    GOOD,
    NECESSARY_PASSED,
    NOT_GOOD,
    Candidate,
    IdealContext,
    QuotientReport,
    Verdict,
    certify_good_bracket,
    dual_certificate,
    iterate_ideal,
    reconstruct_w,
    split_parts,
)
from .errors import (
    A0DegreeError,
    CoverageError,
    DegenerateIdeal,
    DimensionMismatch,
    DomainError,
    GoodBracketError,
    NotLieElement,
    ParseError,
    TruncationOverflow,
)
from .expr import eval_expr, format_expr, parse_expr
from .flows import (
    ExperimentReport,
    FlowResult,
    PiecewiseControl,
    chrono_coefficient,
    fast_osc_experiment,
    flow_endpoint,
    reflected_period,
    target_direction,
)
from .liecore import (
    HallBasis,
    HallElement,
    PBWPoly,
    ad0_apply,
    dynkin_project,
    hall_basis,
    hall_to_series,
    is_lie_element,
    lie_to_hall,
    pbw_decompose,
    rewrite_a0_linear,
)
from .moments import (
    CoordPoly,
    DualVector,
    ExtendedMoments,
    IndexSet,
    MomentMatrix,
    MultiIndex,
    erank1,
    dual_from_witness,
    erank_lower_bound,
    exp_coord,
    extend_moments,
    moment_matrix,
    pd_check,
    project_poly,
    psd_check,
    quadratic_value,
    vandermonde_dual,
)

__version__ = "0.1.0"

__all__ = [
    "A0DegreeError", "Candidate", "CoordPoly", "CoverageError",
    "DegenerateIdeal", "DimensionMismatch", "DomainError", "DualVector",
    "ExperimentReport", "ExtendedMoments", "ExtendedSystemSpec",
    "FlowResult", "GOOD", "GoodBracketError", "GradedComponent",
    "HallBasis", "HallElement", "IdealContext", "IndexSet", "MomentMatrix",
    "MultiIndex", "NECESSARY_PASSED", "NOT_GOOD", "NotLieElement",
    "ParseError", "PBWPoly", "PiecewiseControl", "PolyMap",
    "QuotientReport", "Subspace", "TruncSeries", "TruncationOverflow",
    "Verdict", "ad0_apply", "ad_pow", "adjoint", "bracket",
    "certify_good_bracket", "chrono_coefficient", "dual_certificate",
    "dual_from_witness", "dynkin_project", "erank1", "erank_lower_bound",
    "eval_expr",
    "exp_coord", "exp_trunc", "extend_moments", "fast_osc_experiment",
    "flow_endpoint", "format_expr", "format_word", "hall_basis",
    "hall_to_series", "inverse", "is_lie_element", "iterate_ideal",
    "kalman_subspaces", "lie_to_hall", "log_trunc", "moment_matrix",
    "parse_expr", "pbw_decompose", "pd_check", "phi_map", "project_degree",
    "project_poly", "psd_check", "quadratic_value", "reconstruct_w",
    "reflected_period", "rewrite_a0_linear", "scalar_extension",
    "split_parts", "step3_extension", "target_direction",
    "vandermonde_dual", "with_bound", "words_of_degree",
]
