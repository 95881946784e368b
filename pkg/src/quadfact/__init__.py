"""quadfact: factorization kernels and sharp error bounds for
quadrature-type remainder functionals."""

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    SignCheck,
    classical_simpson_report,
    holder_bound,
    holder_bound_zeta,
    norm_on_interval,
    sign_inequality_check,
    simpson_bound_constants,
    sup_norm_argmax,
    trapezoid_bound_constants,
)
from .charode import (
    CharacteristicSpec,
    ExpPolynomial,
    apply_Dc,
    characteristic_solution,
    coeffs_from_roots,
    taylor_expansion,
)
from .errors import (
    ComplexResidueError,
    DegenerateMeanValueError,
    InputDomainError,
    KernelConditionError,
    MultiplicityUndeterminedError,
    NonConvergenceError,
    OrderError,
    QuadfactError,
)
from .functions import (
    Combination,
    Cosine,
    ExpPolyFunction,
    Exponential,
    Polynomial,
    Sine,
    SmoothFunction,
    monomial,
)
from .kernels import (
    SimpsonParam,
    kernel_general,
    kernel_zeta,
    simpson_alpha_beta,
    simpson_h,
    simpson_kernel,
    simpson_limit_deviation,
    trapezoid_kernel_multi,
)
from .measure import (
    Measure,
    apply_functional,
    root_multiplicity,
    spectral,
    spectral_derivative,
)
from .oracle import (
    FactorizationRecord,
    QuadratureResult,
    integrate_adaptive,
    verify_factorization,
    verify_factorization_zeta,
)
from .rootfind import find_mean_value_point, rho_minus, rho_plus, tan_fixed_point
from .rules import (
    Rule,
    builtin_test_functions,
    parse_rule,
    simpson_measure,
    simpson_rule,
    trapezoid_measure,
    trapezoid_multi_rule,
    trapezoid_rule,
    verification_matrix,
    zeta_trapezoid_rule,
)
from .zetafun import ZetaParams, zeta, zeta_derivative, zeta_taylor_expansion

__version__ = "0.1.0"
