"""Lie rings L_{i,m}(gamma) over the p-adic cyclotomic integers and their Jacobi invariant lambda."""
from .errors import (
    BoundViolation,
    ContextMismatch,
    IndexOutOfRange,
    InvalidGamma,
    LieRingError,
    NotCoprime,
    NotOneParameter,
    NotPrime,
    ParseError,
    PrecisionExhausted,
    PrecisionTooSmall,
    UnknownSuite,
)
from .padic import INF, KElem, PrimeCtx, eigenvector, galois, make_context, teichmuller
from .homspace import (
    CoeffTable,
    HomGamma,
    check_surjective,
    coeff_table,
    default_precision,
    offset,
    one_parameter,
    random_gamma,
    random_gamma_lattice,
)
from .jacobi import JTable, LambdaReport, compute_lambda, j_table, jacobi_value, y_one_param
from .eigenframe import crosscheck, f_g, fg_constants, gamma_capital, weights
from .liering import LieRingPresentation, build, check_jacobi, lower_central_series
from .survey import SurveyRow, survey, survey_row

__version__ = "0.1.0"
