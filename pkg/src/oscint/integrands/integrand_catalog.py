"""Built-in slowly decaying oscillatory integrands with closed-form reference values.

    (1)  (cos(x/2) - cos x) / x              log 2
    (2)  log(x) cos x                        -pi/2
    (3)  J0(x)                               1
    (4)  x J0(x) / (x^2 + 1)                 K0(1)
    (5)  J0(x) / sqrt(x^2 + 1)               I0(1/2) K0(1/2)
    (6)  log(x) J0(x)                        -gamma - log 2
    (7)  x J1(sqrt(x^2 + 1)) / sqrt(x^2 + 1) J0(1)
    (8)  Y0(x) / (x^2 + 1)                   -K0(1)
"""

from dataclasses import dataclass
from typing import Callable, Dict, List

from mpmath import mp, mpf

from oscint.exceptions import UnknownIntegralError
from oscint.integrands.integrand import Integrand
from oscint.numerics.mp_numeric import PrecisionContext, bessel, constant, elem, resolve_context

SERIES_SWITCH = mpf("1e-2")


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    integrand: Integrand
    reference: Callable[[PrecisionContext], mpf]
    description: str


@dataclass(frozen=True)
class _Registration:
    fun: Callable[[mpf], mpf]
    name: str
    singular_at_zero: bool
    reference: Callable[[], mpf]
    description: str


def _cosine_difference_quotient(x: mpf) -> mpf:
    if x >= SERIES_SWITCH:
        return (elem("cos", x / 2) - elem("cos", x)) / x
    # sum_{k>=1} (-1)^k (4^-k - 1) x^(2k-1) / (2k)!
    x2 = x * x
    eps = mp.eps
    total = mpf(0)
    power = x
    factorial = mpf(2)
    k = 1
    while True:
        term = (-1) ** k * (mpf(4) ** -k - 1) * power / factorial
        total += term
        if abs(term) <= eps * abs(total):
            return total
        k += 1
        power *= x2
        factorial *= (2 * k - 1) * (2 * k)


def _x_j1_shifted(x: mpf) -> mpf:
    r = elem("sqrt", x * x + 1)
    return x * bessel("J1", r) / r


_REGISTRY: Dict[int, _Registration] = {
    1: _Registration(
        _cosine_difference_quotient,
        "(cos(x/2)-cos(x))/x",
        False,
        lambda: constant("log2"),
        "integral of (cos(x/2) - cos x)/x = log 2",
    ),
    2: _Registration(
        lambda x: elem("log", x) * elem("cos", x),
        "log(x)cos(x)",
        True,
        lambda: -constant("pi") / 2,
        "integral of log(x) cos(x) = -pi/2",
    ),
    3: _Registration(
        lambda x: bessel("J0", x),
        "J0(x)",
        False,
        lambda: mpf(1),
        "integral of J0(x) = 1",
    ),
    4: _Registration(
        lambda x: x * bessel("J0", x) / (x * x + 1),
        "x*J0(x)/(x^2+1)",
        False,
        lambda: bessel("K0", 1),
        "integral of x J0(x)/(x^2 + 1) = K0(1)",
    ),
    5: _Registration(
        lambda x: bessel("J0", x) / elem("sqrt", x * x + 1),
        "J0(x)/sqrt(x^2+1)",
        False,
        lambda: bessel("I0", mpf(1) / 2) * bessel("K0", mpf(1) / 2),
        "integral of J0(x)/sqrt(x^2 + 1) = I0(1/2) K0(1/2)",
    ),
    6: _Registration(
        lambda x: elem("log", x) * bessel("J0", x),
        "log(x)*J0(x)",
        True,
        lambda: -constant("euler_gamma") - constant("log2"),
        "integral of log(x) J0(x) = -gamma - log 2",
    ),
    7: _Registration(
        _x_j1_shifted,
        "x*J1(sqrt(x^2+1))/sqrt(x^2+1)",
        False,
        lambda: bessel("J0", 1),
        "integral of x J1(sqrt(x^2 + 1))/sqrt(x^2 + 1) = J0(1)",
    ),
    8: _Registration(
        lambda x: bessel("Y0", x) / (x * x + 1),
        "Y0(x)/(x^2+1)",
        True,
        lambda: -bessel("K0", 1),
        "integral of Y0(x)/(x^2 + 1) = -K0(1)",
    ),
}


def register(
    id: int,
    fun: Callable[[mpf], mpf],
    reference: Callable[[], mpf],
    name: str = None,
    description: str = "",
    singular_at_zero: bool = False,
    replace: bool = False,
) -> None:
    """Add an integrand to the catalog.

    ``fun`` and ``reference`` are evaluated at the current mpmath precision.
    """
    if id in _REGISTRY and not replace:
        raise ValueError(f"catalog id {id} is already registered")
    _REGISTRY[id] = _Registration(
        fun, name or f"f{id}", singular_at_zero, reference, description
    )


def unregister(id: int) -> None:
    _REGISTRY.pop(id, None)


def ids() -> List[int]:
    return sorted(_REGISTRY)


def get(id: int) -> CatalogEntry:
    """Catalog entry with a fresh integrand (and evaluation counter)."""
    try:
        registration = _REGISTRY[id]
    except KeyError:
        raise UnknownIntegralError(f"Unknown integral id {id}. Available: {ids()}")

    def reference(ctx: PrecisionContext = None) -> mpf:
        with resolve_context(ctx).workdps():
            return registration.reference()

    return CatalogEntry(
        id=id,
        integrand=Integrand(
            registration.fun,
            name=registration.name,
            singular_at_zero=registration.singular_at_zero,
        ),
        reference=reference,
        description=registration.description,
    )


def reference_value(id: int, ctx: PrecisionContext = None) -> mpf:
    return get(id).reference(ctx)
