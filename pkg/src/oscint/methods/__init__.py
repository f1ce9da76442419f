from .integration_method import IntegralResult, IntegrationMethod
from .defining_function import TaylorSeries, series_eval, taylor_coefficients
from .continued_fraction import (
    BoundarySweep,
    ContinuedFraction,
    ConvergentPair,
    QDBreakdown,
    QDTableau,
    boundary_sweep,
    cf_eval,
    convergent_taylor_coefficients,
    convergents,
    qd_transform,
)
from .hyperfunction_method import (
    HyperfunctionConfig,
    HyperfunctionMethod,
    HyperfunctionRun,
    hyperfunction_run,
    hyperfunction_value,
)
from .euler_baseline import (
    EulerConfig,
    EulerMethod,
    EulerRun,
    Partition,
    euler_run,
    euler_sum,
    euler_value,
    find_partition,
    merge_nonalternating,
)
