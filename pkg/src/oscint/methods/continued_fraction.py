"""Continued fraction continuation of a Taylor series.

The quotient-difference (QD) rhombus rules

    e_0^(n) = 0,  q_1^(n) = c_{n+1} / c_n,
    e_k^(n) = q_k^(n+1) - q_k^(n) + e_{k-1}^(n+1),
    q_{k+1}^(n) = e_k^(n+1) / e_k^(n) * q_k^(n+1)

turn c_0, c_1, ... into the corresponding continued fraction

    a_0 / (1 + a_1 z / (1 + a_2 z / (1 + ...))),   z = zeta - zeta0,

with a_0 = c_0, a_{2k-1} = -q_k^(0), a_{2k} = -e_k^(0). The recurrences lose
digits quickly, so they run at ``PrecisionContext.qd_digits``.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from mpmath import mp, mpc, mpf

from oscint.exceptions import DegenerateSeriesError, PoleError, SeriesTooShortError
from oscint.methods.defining_function import TaylorSeries
from oscint.numerics.mp_numeric import PrecisionContext, resolve_context

logger = logging.getLogger(__name__)

# |Q_k| is kept within [2^-166, 2^166] ~ [1e-50, 1e50]
RESCALE_BITS = 166


@dataclass(frozen=True)
class QDBreakdown:
    """First pivot that fell below the breakdown threshold.

    ``column`` is "c" for a Taylor coefficient pivot (q_1 column) and "e" for an
    e_k^(n) pivot (q_{k+1} column).
    """

    column: str
    k: int
    n: int


@dataclass(frozen=True)
class QDTableau:
    """Columns of the QD scheme: ``e[k][n]`` for k >= 0 and ``q[k][n]`` for k >= 1 (``q[0]`` is empty)."""

    e: Tuple[Tuple[mpc, ...], ...]
    q: Tuple[Tuple[mpc, ...], ...]
    breakdown_at: Optional[QDBreakdown] = None

    @property
    def depth(self) -> int:
        return len(self.q) - 1


@dataclass(frozen=True)
class ContinuedFraction:
    center: mpc
    coefficients: Tuple[mpc, ...]

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class ConvergentPair:
    """P_k and Q_k at a fixed zeta, both divided by 2^rescale_exponent."""

    k: int
    P: mpc
    Q: mpc
    rescale_exponent: int = 0

    @property
    def value(self) -> mpc:
        return self.P / self.Q


@dataclass(frozen=True)
class BoundarySweep:
    epsilons: Tuple[mpf, ...]
    values: Tuple[mpc, ...]
    cauchy: bool


def _is_tiny(x, scale, threshold) -> bool:
    return abs(x) <= threshold * scale


def _first_column(c: List[mpc], threshold: mpf) -> Tuple[List[mpc], Optional[QDBreakdown]]:
    if c[0] == 0 or _is_tiny(c[0], abs(c[1]), threshold):
        raise DegenerateSeriesError(f"leading Taylor coefficient vanishes: c_0 = {c[0]}")
    q1 = []
    for n in range(len(c) - 1):
        scale = max(abs(c[n - 1]) if n > 0 else 0, abs(c[n + 1]))
        if n > 0 and _is_tiny(c[n], scale, threshold):
            return q1, QDBreakdown("c", 1, n)
        q1.append(c[n + 1] / c[n])
    return q1, None


def qd_transform(
    s: TaylorSeries, ctx: PrecisionContext = None
) -> Tuple[QDTableau, ContinuedFraction]:
    """Run the QD algorithm on the coefficients of ``s``.

    A pivot whose modulus falls below 10^(-decimal_digits + 5) times its local scale
    truncates its column at that row instead of stopping the whole tableau. Later
    columns become shorter and are built only from the rows above the pivot, so the
    row n = 0 entries they contribute are unaffected. The continued fraction
    is read off row n = 0 and stops at the first vanishing e_k^(0), which makes
    terminating fractions (rational defining functions) exact.
    """
    ctx = resolve_context(ctx)
    threshold = mpf(10) ** (-ctx.decimal_digits + 5)

    with mp.workdps(ctx.qd_digits):
        c = [mpc(x) for x in s.coefficients]
        q1, breakdown = _first_column(c, threshold)
        if len(q1) < 2:
            raise SeriesTooShortError(
                f"QD breakdown in the first column at n = {len(q1)}: "
                f"c_{len(q1)} is negligible compared to its neighbours"
            )

        e_cols = [[mpc(0)] * len(c)]
        q_cols = [[], q1]
        k = 1
        while True:
            qk, e_prev = q_cols[k], e_cols[k - 1]
            length = min(len(qk), len(e_prev)) - 1
            ek = [qk[n + 1] - qk[n] + e_prev[n + 1] for n in range(length)]
            e_cols.append(ek)

            q_next = []
            for n in range(len(ek) - 1):
                scale = max(abs(qk[n + 1]), abs(qk[n]), abs(e_prev[n + 1]))
                if _is_tiny(ek[n], scale, threshold):
                    if breakdown is None:
                        breakdown = QDBreakdown("e", k, n)
                    break
                q_next.append(ek[n + 1] / ek[n] * qk[n + 1])
            if not q_next:
                break
            q_cols.append(q_next)
            k += 1

        coefficients = [c[0]]
        for k in range(1, len(q_cols)):
            coefficients.append(-q_cols[k][0])
            if not e_cols[k]:
                break
            ek0 = e_cols[k][0]
            scale = max(abs(q_cols[k][1]), abs(q_cols[k][0]), abs(e_cols[k - 1][1]))
            if _is_tiny(ek0, scale, threshold):
                break
            coefficients.append(-ek0)

    if breakdown is not None:
        logger.warning(
            f"QD pivot breakdown in column {breakdown.column}{breakdown.k} at row "
            f"{breakdown.n}; continued fraction has {len(coefficients)} coefficients"
        )
    logger.debug(f"QD produced {len(q_cols) - 1} q columns, {len(coefficients)} coefficients")

    tableau = QDTableau(
        e=tuple(tuple(col) for col in e_cols),
        q=tuple(tuple(col) for col in q_cols),
        breakdown_at=breakdown,
    )
    with ctx.workdps():
        cf = ContinuedFraction(s.center, tuple(+a for a in coefficients))
    return tableau, cf


def convergents(
    cf: ContinuedFraction, zeta, rescale: bool = True
) -> Iterator[ConvergentPair]:
    """Yield P_k, Q_k at ``zeta`` for k = 0, 1, ..., len(cf) - 1.

    P_{-1} = 0, Q_{-1} = 1, P_0 = c_0, Q_0 = 1 and
    P_k = a_k z P_{k-2} + P_{k-1}, Q_k = a_k z Q_{k-2} + Q_{k-1}.
    """
    z = mpc(zeta) - cf.center
    a = cf.coefficients
    p_prev, q_prev = mpc(0), mpc(1)
    p, q = mpc(a[0]), mpc(1)
    exponent = 0
    yield ConvergentPair(0, p, q, exponent)
    for k in range(1, len(a)):
        az = a[k] * z
        p_prev, p = p, az * p_prev + p
        q_prev, q = q, az * q_prev + q
        if rescale and q != 0:
            m = mp.mag(q)
            if abs(m) > RESCALE_BITS:
                factor = mp.ldexp(mpf(1), -m)
                p, q = p * factor, q * factor
                p_prev, q_prev = p_prev * factor, q_prev * factor
                exponent += m
        yield ConvergentPair(k, p, q, exponent)


def cf_eval(
    cf: ContinuedFraction,
    zeta,
    tol=None,
    ctx: PrecisionContext = None,
    rescale: bool = True,
) -> Tuple[mpc, mpf, int]:
    """Evaluate the continued fraction at ``zeta``.

    Returns the first convergent P_k/Q_k within ``tol`` (relative) of its predecessor,
    otherwise the last one; together with the last difference and k.
    """
    ctx = resolve_context(ctx)
    if len(cf) < 2:
        raise ValueError(f"continued fraction needs at least 2 coefficients, got {len(cf)}")

    with ctx.workdps():
        tol = ctx.eps(15) if tol is None else mpf(tol)
        if not tol > 0:
            raise ValueError(f"tol must be positive, got {tol}")
        previous = None
        difference = mp.inf
        for pair in convergents(cf, zeta, rescale=rescale):
            if pair.Q == 0:
                raise PoleError(f"Q_{pair.k} vanishes at zeta = {zeta}", pair.k)
            value = pair.value
            if previous is not None:
                difference = abs(value - previous)
                if difference <= tol * abs(value):
                    logger.debug(f"convergents agree at k = {pair.k}")
                    return value, difference, pair.k
            previous = value
        return value, difference, pair.k


def boundary_sweep(
    cf: ContinuedFraction,
    max_exponent: int = 10,
    tol=None,
    ctx: PrecisionContext = None,
) -> BoundarySweep:
    """Values at zeta = i 10^-m, m = 1..max_exponent, approaching the boundary value F(0).

    ``cauchy`` is set when the distances between successive values do not grow.
    """
    ctx = resolve_context(ctx)
    with ctx.workdps():
        epsilons = tuple(mpf(10) ** -m for m in range(1, max_exponent + 1))
        values = tuple(cf_eval(cf, mpc(0, eps), tol, ctx)[0] for eps in epsilons)
        steps = [abs(b - a) for a, b in zip(values, values[1:])]
        floor = ctx.eps()
        cauchy = all(later <= earlier + floor for earlier, later in zip(steps, steps[1:]))
    return BoundarySweep(epsilons, values, cauchy)


def convergent_taylor_coefficients(
    cf: ContinuedFraction,
    k: int,
    count: int,
    radius=mpf("1e-10"),
    points: int = None,
    ctx: PrecisionContext = None,
) -> List[mpc]:
    """Maclaurin coefficients (in zeta - zeta0) of the k-th convergent P_k/Q_k.

    The convergent is sampled on a circle of ``radius`` around zeta0 and the first
    ``count`` trigonometric moments are returned. The samples are taken at raised
    precision because dividing by radius^n amplifies rounding errors.
    """
    ctx = resolve_context(ctx)
    if points is None:
        # aliasing of coefficient n + points is damped by radius^points
        points = count + 1 + ctx.working_digits // 10
    extra = int(-mp.log10(radius) * count) + 20
    with ctx.workdps(extra):
        radius = mpf(radius)
        samples = []
        for j in range(points):
            w = mp.expjpi(mpf(2 * j) / points)
            pair = _convergent_at(cf, cf.center + radius * w, k)
            samples.append((w, pair.value))
        moments = []
        for n in range(count):
            moment = mp.fsum(value * w ** (-n) for w, value in samples) / points
            moments.append(moment / radius**n)
    with ctx.workdps():
        return [+m for m in moments]


def _convergent_at(cf: ContinuedFraction, zeta, k: int) -> ConvergentPair:
    for pair in convergents(cf, zeta):
        if pair.k == k:
            return pair
    raise ValueError(f"continued fraction has no convergent with k = {k}")
