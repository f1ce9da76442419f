"""Taylor series of the defining function F[f](zeta) = int_0^inf f(x) exp(i zeta x) dx.

About a center zeta0 with Im(zeta0) > 0 the coefficients are

    c_n = 1/n! int_0^inf (i x)^n f(x) exp(i zeta0 x) dx,

all of which decay like exp(-Im(zeta0) x). For zeta0 = i no oscillatory factor
enters the coefficient integrands besides f itself.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

from mpmath import mp, mpc, mpf

from oscint.exceptions import ConvergenceError, DomainError, SeriesTooShortError
from oscint.integrands import Integrand
from oscint.numerics.mp_numeric import PrecisionContext, resolve_context
from oscint.quadrature import DERule, de_integrate_vector

logger = logging.getLogger(__name__)

DEFAULT_ZETA0 = mpc(0, 1)
DEFAULT_N = 100
GROWTH_WARNING_RATIO = 10


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients c_0..c_N of F[f] about ``center``.

    ``rule`` is the DE node set the coefficients were computed on (if any).
    """

    center: mpc
    coefficients: Tuple[mpc, ...]
    rule: Optional[DERule] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not mp.im(self.center) > 0:
            raise DomainError(f"center must lie in the upper half plane, got {self.center}")
        if len(self.coefficients) < 3:
            raise SeriesTooShortError(
                f"need at least c_0, c_1, c_2, got {len(self.coefficients)} coefficients"
            )

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)


def _check_growth(coefficients) -> None:
    for n in range(1, len(coefficients)):
        previous = abs(coefficients[n - 1])
        if previous != 0 and abs(coefficients[n]) > GROWTH_WARNING_RATIO * previous:
            logger.warning(
                f"|c_{n}|/|c_{n - 1}| = {mp.nstr(abs(coefficients[n]) / previous, 3)} "
                f"exceeds {GROWTH_WARNING_RATIO}; the Taylor radius may be tiny"
            )
            return


def taylor_coefficients(
    f: Integrand,
    zeta0=DEFAULT_ZETA0,
    N: int = DEFAULT_N,
    ctx: PrecisionContext = None,
) -> TaylorSeries:
    """Taylor coefficients c_0..c_N of F[f] about zeta0.

    All coefficients share one DE node set, so f is evaluated exactly once per node.
    The step is halved until c_0 has converged; that rule is then used for every c_n.
    The factor (i x)^n / n! is built up incrementally at every node.
    """
    ctx = resolve_context(ctx)
    if N < 2:
        raise SeriesTooShortError(f"N must be >= 2, got {N}")

    with ctx.workdps():
        zeta0 = mpc(zeta0)
        if not zeta0.imag > 0:
            raise DomainError(f"zeta0 must satisfy Im(zeta0) > 0, got {zeta0}")

        def moments(x: mpf):
            term = f(x) * mp.expj(zeta0 * x)
            ix = mpc(0, x)
            terms = [term]
            for n in range(1, N + 1):
                term = term * ix / n
                terms.append(term)
            return terms

        try:
            values, _, rule = de_integrate_vector(
                moments, N + 1, zeta0.imag, N, ctx, converge_on=0
            )
        except ConvergenceError as err:
            raise ConvergenceError(
                f"Taylor coefficients c_0..c_{N} of {f.name} did not converge "
                f"(last correction {mp.nstr(err.last_correction, 3)})",
                err.best_estimate,
                err.last_correction,
            ) from err

        coefficients = tuple(mpc(c) for c in values)

    _check_growth(coefficients)
    logger.info(f"computed c_0..c_{N} of {f.name} on {len(rule)} DE nodes")
    return TaylorSeries(center=zeta0, coefficients=coefficients, rule=rule)


def series_eval(s: TaylorSeries, zeta, terms: Optional[int] = None):
    """Horner evaluation of sum_n c_n (zeta - zeta0)^n, optionally truncated to ``terms`` terms."""
    z = mpc(zeta) - s.center
    coefficients = s.coefficients if terms is None else s.coefficients[:terms]
    total = mpc(0)
    for c in reversed(coefficients):
        total = total * z + c
    return total
