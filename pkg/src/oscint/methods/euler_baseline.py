"""Alternating-series baseline.

The integral is split at sign changes 0 = a_0 < a_1 < ... < a_K of f into panel
integrals I_k of alternating sign, each computed with a Gauss-Legendre rule, and the
alternating series sum_k I_k is accelerated with the Euler transformation.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from oscint.exceptions import PartitionError
from oscint.integrands import Integrand
from oscint.methods.integration_method import IntegralResult, IntegrationMethod
from oscint.numerics.mp_numeric import PrecisionContext, resolve_context
from oscint.quadrature import GaussLegendreRule, gauss_legendre, panel_integrate

logger = logging.getLogger(__name__)

DEFAULT_PANELS = 50
DEFAULT_GL_POINTS = 100
MIN_PANELS = 4
SCAN_DIGITS = 40
BISECTION_DIGITS = 30
# nodes of the first panel cluster like s^8 towards an endpoint singularity
SINGULAR_GRADING = 8


@dataclass(frozen=True)
class Partition:
    """Partition points a_0 = 0 < a_1 < ... < a_K.

    ``scan_count`` is the number of integrand evaluations spent locating them.
    """

    points: Tuple[mpf, ...]
    scan_count: int = 0

    def __post_init__(self):
        if self.points[0] != 0:
            raise ValueError(f"partition must start at 0, got {self.points[0]}")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("partition points must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points) - 1

    @property
    def panels(self) -> List[Tuple[mpf, mpf]]:
        return list(zip(self.points, self.points[1:]))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _bisect(f: Integrand, a: mpf, b: mpf, sign_a: int) -> mpf:
    tol = mpf(10) ** -BISECTION_DIGITS
    while b - a > tol * max(1, a):
        mid = (a + b) / 2
        s = _sign(f(mid))
        if s == 0:
            return mid
        if s == sign_a:
            a = mid
        else:
            b = mid
    return (a + b) / 2


def find_partition(
    f: Integrand,
    K: int = DEFAULT_PANELS,
    scan_step=None,
    scan_limit=None,
    ctx: PrecisionContext = None,
    rule: GaussLegendreRule = None,
) -> Partition:
    """Locate K sign changes of f and return a_0 = 0, a_1, ..., a_K.

    f is sampled at x = scan_step, 2 scan_step, ... (default pi/8) up to ``scan_limit``
    (default 4 pi (K + 8)); each bracket with a sign change is bisected to 30 digits.
    A sample that is exactly zero is taken as a partition point itself. If ``rule``
    is given, the panel integrals are computed with it and checked to alternate
    in sign; those evaluations are included in ``scan_count``.
    """
    if K < MIN_PANELS:
        raise ValueError(f"need K >= {MIN_PANELS} panels, got {K}")
    start = f.eval_count

    with mp.workdps(SCAN_DIGITS):
        step = mp.pi / 8 if scan_step is None else mpf(scan_step)
        limit = 4 * mp.pi * (K + 8) if scan_limit is None else mpf(scan_limit)
        if step <= 0:
            raise ValueError(f"scan_step must be positive, got {step}")

        points = [mpf(0)]
        x_prev, sign_prev = None, 0
        j = 1
        while len(points) <= K:
            x = j * step
            if x > limit:
                raise PartitionError(
                    f"found {len(points) - 1} sign changes of {f.name} below x = "
                    f"{mp.nstr(limit, 6)}, need {K}"
                )
            s = _sign(f(x))
            if s == 0:
                points.append(x)
                sign_prev = 0
            elif sign_prev != 0 and s != sign_prev:
                points.append(_bisect(f, x_prev, x, sign_prev))
                sign_prev = s
            else:
                sign_prev = s
            x_prev = x
            j += 1

    partition = Partition(tuple(points), scan_count=f.eval_count - start)
    if rule is not None:
        values = _panel_values(f, partition, rule, ctx)
        for k in range(1, len(values)):
            if _sign(values[k]) != -_sign(values[k - 1]):
                raise PartitionError(
                    f"panels {k - 1} and {k} of {f.name} do not alternate in sign"
                )
        partition = Partition(partition.points, scan_count=f.eval_count - start)
    logger.debug(
        f"{f.name}: {K} sign changes up to x = {mp.nstr(points[-1], 8)} "
        f"with {partition.scan_count} evaluations"
    )
    return partition


def _panel_values(
    f: Integrand, partition: Partition, rule: GaussLegendreRule, ctx: PrecisionContext = None
) -> List[mpf]:
    ctx = resolve_context(ctx)
    values = []
    with ctx.workdps():
        for k, (a, b) in enumerate(partition.panels):
            grading = SINGULAR_GRADING if k == 0 and f.singular_at_zero else 1
            values.append(panel_integrate(f, a, b, rule, grading))
    return values


def merge_nonalternating(values: Sequence[mpf], name: str = "f") -> List[mpf]:
    """Sum runs of adjacent panels with equal sign into one panel."""
    merged = [values[0]]
    for k, v in enumerate(values[1:], start=1):
        if _sign(v) == _sign(merged[-1]) or v == 0:
            logger.warning(f"{name}: panel {k} has the sign of its predecessor, merging")
            merged[-1] += v
        else:
            merged.append(v)
    return merged


def euler_sum(terms: Sequence, direct_terms: int = 0) -> mpf:
    """Value of the alternating series sum_k (-1)^k t_k.

    The first ``direct_terms`` terms are summed directly; the Euler transformation

        sum_{k>=m} (-1)^k t_k = (-1)^m sum_j (-1)^j Delta^j t_m / 2^(j+1)

    with forward differences Delta t_k = t_{k+1} - t_k is applied to the rest,
    using every available term.
    """
    terms = [mpf(t) for t in terms]
    if not 0 <= direct_terms <= len(terms):
        raise ValueError(f"direct_terms must lie in [0, {len(terms)}], got {direct_terms}")
    head = mp.fsum((-1) ** k * t for k, t in enumerate(terms[:direct_terms]))

    row = terms[direct_terms:]
    tail = []
    j = 0
    while row:
        tail.append((-1) ** j * row[0] / mpf(2) ** (j + 1))
        row = [b - a for a, b in zip(row, row[1:])]
        j += 1
    return head + (-1) ** direct_terms * mp.fsum(tail)


@dataclass(frozen=True)
class EulerConfig:
    """
    Args:
        - panels: Number K of alternating panels.
        - gl_points: Points of the Gauss-Legendre rule per panel.
        - precision: Precision policy for the panel quadrature.
        - scan_step: Sampling step of the sign-change scan (None: pi/8).
        - direct_terms: Leading panels summed without transformation (None: K // 3).
    """

    panels: int = DEFAULT_PANELS
    gl_points: int = DEFAULT_GL_POINTS
    precision: PrecisionContext = field(default_factory=PrecisionContext)
    scan_step: Optional[object] = None
    direct_terms: Optional[int] = None

    def __post_init__(self):
        if self.panels < MIN_PANELS:
            raise ValueError(f"panels must be >= {MIN_PANELS}, got {self.panels}")
        if self.gl_points < 1:
            raise ValueError(f"gl_points must be >= 1, got {self.gl_points}")
        if self.direct_terms is not None and not 0 <= self.direct_terms < self.panels:
            raise ValueError(
                f"direct_terms must lie in [0, {self.panels}), got {self.direct_terms}"
            )


@dataclass(frozen=True)
class EulerRun:
    partition: Partition
    panel_values: Tuple[mpf, ...]
    result: IntegralResult
    leading_sign: int = 1

    @property
    def partial_sum(self) -> mpf:
        return mp.fsum(self.panel_values)


def euler_run(
    f: Integrand, config: EulerConfig = None, rule: GaussLegendreRule = None
) -> EulerRun:
    config = config if config is not None else EulerConfig()
    ctx = config.precision
    K = config.panels
    if rule is None:
        rule = gauss_legendre(config.gl_points, ctx)

    partition = find_partition(f, K, config.scan_step, ctx=ctx)
    start = f.eval_count
    values = _panel_values(f, partition, rule, ctx)
    eval_count = f.eval_count - start

    with ctx.workdps():
        alternating = merge_nonalternating(values, f.name)
        direct = config.direct_terms if config.direct_terms is not None else K // 3
        direct = max(0, min(direct, len(alternating) - 2))
        magnitudes = [abs(v) for v in alternating]
        sign = _sign(alternating[0])
        value = sign * euler_sum(magnitudes, direct)
        previous = sign * euler_sum(magnitudes[:-1], direct)
        result = IntegralResult(
            method=EulerMethod.name,
            value=value,
            err_estimate=abs(value - previous),
            eval_count=eval_count,
            panels_used=len(alternating),
            scan_count=partition.scan_count,
        )
    logger.info(
        f"{f.name}: Euler value {mp.nstr(value, 15)} from {len(alternating)} panels "
        f"(leading sign {sign:+d}, {eval_count} + {partition.scan_count} evaluations)"
    )
    return EulerRun(partition, tuple(values), result, sign)


def euler_value(
    f: Integrand,
    K: int = DEFAULT_PANELS,
    rule: GaussLegendreRule = None,
    ctx: PrecisionContext = None,
    direct_terms: Optional[int] = None,
) -> IntegralResult:
    """Integral of f over (0, inf) from K alternating panels and the Euler transformation."""
    ctx = resolve_context(ctx)
    gl_points = rule.n if rule is not None else DEFAULT_GL_POINTS
    config = EulerConfig(K, gl_points, ctx, direct_terms=direct_terms)
    return euler_run(f, config, rule).result


class EulerMethod(IntegrationMethod):
    name = "euler"

    def __init__(self, config: EulerConfig = None):
        self.config = config if config is not None else EulerConfig()

    def integrate(self, integrand: Integrand) -> IntegralResult:
        return euler_run(integrand, self.config).result
