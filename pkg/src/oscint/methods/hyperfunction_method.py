"""Integration by analytic continuation of the defining function.

For f decaying slowly on (0, inf) the defining function F[f](zeta) is analytic in
Im(zeta) > 0, and the integral is its boundary value at zeta = 0. The pipeline

    taylor_coefficients -> qd_transform -> cf_eval(zeta = 0)

computes F about zeta0 (where the coefficient integrals decay exponentially),
continues it by a continued fraction, and evaluates the continuation at the origin.
"""

import logging
from dataclasses import dataclass, field

from mpmath import mp, mpc

from oscint.exceptions import DomainError, SeriesTooShortError
from oscint.integrands import Integrand
from oscint.methods.continued_fraction import (
    ContinuedFraction,
    QDTableau,
    cf_eval,
    qd_transform,
)
from oscint.methods.defining_function import (
    DEFAULT_N,
    DEFAULT_ZETA0,
    TaylorSeries,
    taylor_coefficients,
)
from oscint.methods.integration_method import IntegralResult, IntegrationMethod
from oscint.numerics.mp_numeric import PrecisionContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HyperfunctionConfig:
    """
    Args:
        - zeta0: Expansion center, Im(zeta0) > 0.
        - n_coefficients: Highest Taylor coefficient index N (N + 1 coefficients).
        - precision: Precision policy for all stages.
        - tol: Relative agreement of successive convergents; None means
          10^(-decimal_digits + 15).
    """

    zeta0: complex = DEFAULT_ZETA0
    n_coefficients: int = DEFAULT_N
    precision: PrecisionContext = field(default_factory=PrecisionContext)
    tol: object = None

    def __post_init__(self):
        if not mpc(self.zeta0).imag > 0:
            raise DomainError(f"zeta0 must satisfy Im(zeta0) > 0, got {self.zeta0}")
        if self.n_coefficients < 2:
            raise SeriesTooShortError(f"n_coefficients must be >= 2, got {self.n_coefficients}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


@dataclass(frozen=True)
class HyperfunctionRun:
    """All intermediate stages of one pipeline run."""

    series: TaylorSeries
    tableau: QDTableau
    cf: ContinuedFraction
    result: IntegralResult


def hyperfunction_run(f: Integrand, config: HyperfunctionConfig = None) -> HyperfunctionRun:
    config = config if config is not None else HyperfunctionConfig()
    ctx = config.precision
    start = f.eval_count

    series = taylor_coefficients(f, config.zeta0, config.n_coefficients, ctx)
    eval_count = f.eval_count - start
    tableau, cf = qd_transform(series, ctx)
    value, err, k_used = cf_eval(cf, 0, config.tol, ctx)

    with ctx.workdps():
        imag_residue = abs(mp.im(value))
        result = IntegralResult(
            method=HyperfunctionMethod.name,
            value=mp.re(value),
            err_estimate=max(err, imag_residue),
            eval_count=eval_count,
            k_used=k_used,
            imag_residue=imag_residue,
        )
    logger.info(
        f"{f.name}: hyperfunction value {mp.nstr(result.value, 15)} "
        f"(k = {k_used}, {eval_count} evaluations)"
    )
    return HyperfunctionRun(series, tableau, cf, result)


def hyperfunction_value(f: Integrand, config: HyperfunctionConfig = None) -> IntegralResult:
    """Integral of f over (0, inf) as the value F[f](0) of the continued fraction."""
    return hyperfunction_run(f, config).result


class HyperfunctionMethod(IntegrationMethod):
    name = "hyperfunction"

    def __init__(self, config: HyperfunctionConfig = None):
        self.config = config if config is not None else HyperfunctionConfig()

    def integrate(self, integrand: Integrand) -> IntegralResult:
        return hyperfunction_value(integrand, self.config)
