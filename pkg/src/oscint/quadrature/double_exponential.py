"""Double-exponential quadrature on (0, inf) for integrands with exponential decay.

The substitution x = phi(t) = exp(t - exp(-t)) turns both the x -> 0 end and the
exponentially decaying x -> inf end into double-exponential decay in t, after which
the trapezoidal rule converges roughly quadratically in the number of nodes. Step
halving keeps every previous node, so integrand evaluations are never repeated.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import scipy.optimize
from mpmath import mp, mpf

from oscint.exceptions import ConvergenceError, DomainError
from oscint.numerics.mp_numeric import PrecisionContext, resolve_context

logger = logging.getLogger(__name__)

H_INITIAL = mpf(1) / 2
# h0 / 2**19 == 2**-20
MAX_LEVEL = 19


@dataclass(frozen=True)
class DERule:
    """Frozen DE node set.

    Args:
        - h: Step size in the t variable.
        - t_lo, t_hi: Truncation range in the t variable.
        - nodes: Abscissae x_j = phi(t_j), strictly increasing and positive.
        - weights: phi'(t_j) * h.
    """

    h: mpf
    t_lo: mpf
    t_hi: mpf
    nodes: Tuple[mpf, ...]
    weights: Tuple[mpf, ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, g: Callable[[mpf], object]):
        """Apply the frozen rule to another integrand (ascending node order)."""
        return mp.fsum(w * g(x) for x, w in zip(self.nodes, self.weights))


def de_transform(t: mpf) -> Tuple[mpf, mpf]:
    """Return phi(t) and phi'(t)."""
    em = mp.exp(-t)
    x = mp.exp(t - em)
    return x, x * (1 + em)


def truncation_point(decay_rate, max_poly_order: int, target_digits: int) -> mpf:
    """Smallest x with decay_rate*x - max_poly_order*ln(x) >= (target_digits + 10)*ln(10).

    Beyond this point x^n * exp(-decay_rate*x) (and a fortiori the same quantity divided
    by n!) is below 10^(-target_digits - 10). The root is found by bisection on the
    monotone branch x >= max_poly_order / decay_rate.
    """
    rate = float(decay_rate)
    if rate <= 0:
        raise DomainError(f"decay_rate must be positive, got {decay_rate}")
    if max_poly_order < 0:
        raise ValueError(f"max_poly_order must be non-negative, got {max_poly_order}")

    target = (target_digits + 10) * math.log(10)

    def excess(x: float) -> float:
        if max_poly_order == 0:
            return rate * x - target
        return rate * x - max_poly_order * math.log(x) - target

    lo = max_poly_order / rate
    if excess(max(lo, 1e-300)) >= 0:
        return mpf(lo)
    hi = max(2 * lo, 1.0)
    while excess(hi) < 0:
        hi *= 2
    return mpf(scipy.optimize.bisect(excess, lo, hi, xtol=1e-12, maxiter=500))


def _node_range(
    decay_rate: mpf, max_poly_order: int, ctx: PrecisionContext, h0: mpf
) -> Tuple[int, int]:
    target = ctx.working_digits
    x_max = truncation_point(decay_rate, max_poly_order, target)

    j_hi = 1
    while de_transform(j_hi * h0)[0] < x_max:
        j_hi += 1

    # weight times a logarithmic singularity must be negligible at t_lo
    eps = mpf(10) ** (-target - 10)
    j_lo = -1
    while True:
        t = j_lo * h0
        em = mp.exp(-t)
        x = mp.exp(t - em)
        if x * (1 + em) * max(1, abs(t - em)) <= eps:
            break
        j_lo -= 1
    return j_lo, j_hi


def _estimate_error(current, previous, before_previous, scale) -> mpf:
    """Error of the latest trapezoidal estimate.

    The DE trapezoidal rule roughly doubles its number of correct digits per
    halving, so the latest error is extrapolated from the last two corrections.
    """
    d1 = abs(current - previous)
    if d1 == 0:
        return mpf(0)
    if scale == 0:
        return d1
    r1 = mp.log10(d1 / scale)
    d2 = abs(current - before_previous)
    r2 = mp.log10(d2 / scale) if d2 > 0 else mpf(0)
    if r1 < r2 < 0:
        r1 = max(r1 * r1 / r2, 2 * r1)
    return scale * mpf(10) ** r1


def _accumulate(g, size: int, ts) -> Tuple[List, List, int]:
    sums = [mpf(0)] * size
    scales = [mpf(0)] * size
    count = 0
    for t in ts:
        x, dx = de_transform(t)
        values = g(x)
        if len(values) != size:
            raise ValueError(f"integrand returned {len(values)} components, expected {size}")
        for n, v in enumerate(values):
            term = v * dx
            sums[n] += term
            scales[n] += abs(term)
        count += 1
    return sums, scales, count


def _build_rule(t_lo: mpf, span: int, level: int, h0: mpf) -> DERule:
    h = h0 / 2**level
    nodes, weights = [], []
    for m in range(span * 2**level + 1):
        x, dx = de_transform(t_lo + m * h)
        nodes.append(x)
        weights.append(dx * h)
    return DERule(
        h=h,
        t_lo=t_lo,
        t_hi=t_lo + span * h0,
        nodes=tuple(nodes),
        weights=tuple(weights),
    )


def de_integrate_vector(
    g: Callable[[mpf], Sequence],
    size: int,
    decay_rate,
    max_poly_order: int,
    ctx: PrecisionContext = None,
    h0=H_INITIAL,
    max_level: int = MAX_LEVEL,
    converge_on: Optional[int] = None,
) -> Tuple[List, List[mpf], DERule]:
    """Integrate a vector valued integrand over (0, inf) on one shared node set.

    Args:
        - g: Maps x to a sequence of ``size`` values. It is called exactly once per node.
        - decay_rate: Exponential decay rate of every component.
        - max_poly_order: Largest polynomial growth order of the components.
        - ctx: Precision context; the target is 10^(-decimal_digits-5) relative to each
          component's absolute scale sum |w_j g(x_j)|.
        - converge_on: Index of the component whose convergence ends the step halving;
          the rule of that level is used for all components. None waits for every one.

    Returns:
        - values: Integral of every component.
        - errors: Absolute error estimate of every component.
        - rule: The frozen node set of the final level.
    """
    ctx = resolve_context(ctx)
    with ctx.workdps():
        decay_rate = mpf(decay_rate)
        if decay_rate <= 0:
            raise DomainError(f"decay_rate must be positive, got {decay_rate}")
        if converge_on is not None and not 0 <= converge_on < size:
            raise ValueError(f"converge_on must lie in [0, {size}), got {converge_on}")
        h0 = mpf(h0)
        j_lo, j_hi = _node_range(decay_rate, max_poly_order, ctx, h0)
        t_lo = j_lo * h0
        span = j_hi - j_lo
        tol = mpf(10) ** (-ctx.decimal_digits - 5)

        sums, abs_sums, count = _accumulate(g, size, (t_lo + m * h0 for m in range(span + 1)))
        history = [[s * h0 for s in sums]]
        scales = [a * h0 for a in abs_sums]
        errors = [abs(s) for s in history[-1]]
        h = h0

        for level in range(1, max_level + 1):
            h = h / 2
            new_nodes = (t_lo + (2 * i + 1) * h for i in range(span * 2 ** (level - 1)))
            sums, abs_sums, new_count = _accumulate(g, size, new_nodes)
            count += new_count
            current = [p / 2 + h * s for p, s in zip(history[-1], sums)]
            scales = [a / 2 + h * s for a, s in zip(scales, abs_sums)]
            history = (history + [current])[-3:]

            if len(history) < 3:
                errors = [abs(c - p) for c, p in zip(current, history[0])]
                continue
            errors = [
                _estimate_error(c, p, pp, sc)
                for c, p, pp, sc in zip(history[2], history[1], history[0], scales)
            ]
            watched = range(size) if converge_on is None else (converge_on,)
            worst = max(
                (errors[n] / scales[n] for n in watched if scales[n] != 0), default=mpf(0)
            )
            logger.debug(
                f"DE level {level}: h={mp.nstr(h, 5)}, nodes={count}, "
                f"worst relative error {mp.nstr(worst, 3)}"
            )
            if worst <= tol:
                break
        else:
            last = max(abs(c - p) for c, p in zip(history[-1], history[-2]))
            raise ConvergenceError(
                f"DE quadrature did not reach 1e-{ctx.decimal_digits + 5} before h < 2^-20",
                best_estimate=history[-1],
                last_correction=last,
            )

        rule = _build_rule(t_lo, span, level, h0)
        logger.debug(f"DE rule frozen with {len(rule)} nodes, h={mp.nstr(rule.h, 5)}")
        return history[-1], errors, rule


def de_integrate(
    g: Callable[[mpf], object],
    decay_rate,
    max_poly_order: int,
    ctx: PrecisionContext = None,
) -> Tuple[object, DERule]:
    """Scalar wrapper of :func:`de_integrate_vector` returning (value, rule)."""
    try:
        values, _, rule = de_integrate_vector(
            lambda x: (g(x),), 1, decay_rate, max_poly_order, ctx
        )
    except ConvergenceError as err:
        best = err.best_estimate[0] if err.best_estimate else None
        raise ConvergenceError(str(err), best, err.last_correction) from err
    return values[0], rule
