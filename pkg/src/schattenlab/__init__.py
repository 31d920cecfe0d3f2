"""Schatten-class diagnostics for pseudo-differential operators on tori and SU(2).

Symbols are evaluation rules sigma(x, [xi]); operators are studied through
their finite sections on nested windows {<xi> <= Lambda} of the unitary dual.
"""
from .errors import (
    AliasingError,
    ConfigurationError,
    ContractError,
    EmptyWindowError,
    InsufficientDataError,
    LabError,
    NumericError,
    ParameterError,
    ShapeError,
    UndefinedFitError,
    UnsupportedGroupError,
)
from .groups import (
    SU2,
    DualPoint,
    GroupDescriptor,
    QuadratureGrid,
    Torus,
    dual_point,
    enumerate_dual,
    haar_quadrature,
    laplace_eigenvalue,
    rep_matrix,
    resolution_for,
)
from .windows import TruncationWindow, make_window
from .symbols import (
    MatrixSymbol,
    SymbolNormReport,
    builtin_bessel,
    builtin_coefficient,
    builtin_dyadic_atypical,
    builtin_multiplier,
    character,
    difference_op_torus,
    estimate_symbol_order,
    named_multiplier,
    symbol_lp_dual_norm,
    symbol_mixed_norm,
    symbol_schatten_dual_norm,
)
from .quantize import (
    FourierCoefficients,
    OperatorMatrix,
    apply_op,
    assemble_matrix,
    extract_symbol,
    fourier_forward,
    fourier_inverse,
    schwartz_kernel,
)
from .spectral import (
    SchattenReport,
    SingularSpectrum,
    VerdictThresholds,
    dyadic_ladder,
    invariant_singular_values,
    lemma_series,
    schatten_norm,
    schatten_partial,
    schatten_report,
    singular_values,
    tail_exponent,
)
from .criteria import (
    CriterionOutcome,
    atypical_reproduction,
    condition3_sum,
    condition4_sum,
    cosphere_average,
    elliptic_flag,
    order_threshold,
    order_threshold_sweep,
    redecide,
    regularity_criterion,
    russo_check,
)

__version__ = "0.1.0"
