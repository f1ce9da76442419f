from . import cli, integrands, methods, numerics, quadrature
from .exceptions import (
    ConvergenceError,
    DegenerateSeriesError,
    DomainError,
    OscintError,
    PartitionError,
    PoleError,
    SeriesTooShortError,
    UnknownIntegralError,
)
from .integrands import Integrand
from .methods import (
    EulerConfig,
    EulerMethod,
    HyperfunctionConfig,
    HyperfunctionMethod,
    IntegralResult,
    IntegrationMethod,
    euler_value,
    hyperfunction_value,
)
from .numerics import PrecisionContext
