"""Arbitrary precision kernel shared by all other modules.

All arithmetic is carried out with :mod:`mpmath`. A :class:`PrecisionContext`
fixes the number of decimal digits an operation must be correct to; callers
enter ``ctx.workdps()`` to run a block of code at the context's working
precision (decimal digits plus guard digits).
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import mpmath
from mpmath import mp, mpc, mpf

from oscint.exceptions import DomainError

BigReal = mpf
BigComplex = mpc
Number = Union[mpf, mpc, int, float, complex, str]

MIN_DECIMAL_DIGITS = 16
DEFAULT_DECIMAL_DIGITS = 100
DEFAULT_GUARD_DIGITS = 20


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision policy.

    Args:
        - decimal_digits: Number of decimal digits results are requested to.
        - guard_digits: Additional digits every operation carries internally.
    """

    decimal_digits: int = DEFAULT_DECIMAL_DIGITS
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if int(self.decimal_digits) != self.decimal_digits:
            raise ValueError(
                f"decimal_digits must be an integer, got {self.decimal_digits}"
            )
        if self.decimal_digits < MIN_DECIMAL_DIGITS:
            raise ValueError(
                f"decimal_digits must be >= {MIN_DECIMAL_DIGITS}, got {self.decimal_digits}"
            )
        if self.guard_digits < 0:
            raise ValueError(
                f"guard_digits must be non-negative, got {self.guard_digits}"
            )

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    @property
    def qd_digits(self) -> int:
        """Digits used inside the quotient-difference recurrences."""
        return max(self.working_digits, math.ceil(1.5 * self.decimal_digits))

    def workdps(self, extra: int = 0):
        """Context manager running the enclosed block at working precision (+ extra digits)."""
        return mp.workdps(self.working_digits + extra)

    def eps(self, shift: int = 0) -> mpf:
        """10^(-decimal_digits + shift)."""
        return mpf(10) ** (-self.decimal_digits + shift)

    def with_digits(self, decimal_digits: int) -> "PrecisionContext":
        return replace(self, decimal_digits=decimal_digits)


def resolve_context(ctx: Optional[PrecisionContext]) -> PrecisionContext:
    return ctx if ctx is not None else PrecisionContext()


def _is_real(x) -> bool:
    return not isinstance(x, (mpc, complex))


def _require_positive(name: str, x) -> None:
    if _is_real(x) and x <= 0:
        raise DomainError(f"{name} requires x > 0 on the real branch, got {x}")


def _log(x):
    if _is_real(x):
        _require_positive("log", x)
    elif x == 0:
        raise DomainError("log is undefined at 0")
    return mp.log(x)


def _sqrt(x):
    if _is_real(x) and x < 0:
        raise DomainError(f"sqrt requires x >= 0 on the real branch, got {x}")
    return mp.sqrt(x)


def _pow(x, y):
    if y is None:
        raise DomainError("pow needs an exponent")
    if _is_real(x) and _is_real(y) and x < 0 and y != int(y):
        raise DomainError(f"pow of negative base {x} to non-integer power {y}")
    if x == 0 and mp.re(y) < 0:
        raise DomainError(f"pow of zero to negative power {y}")
    return mp.power(x, y)


_ELEMENTARY = {
    "exp": lambda x, y: mp.exp(x),
    "log": lambda x, y: _log(x),
    "sin": lambda x, y: mp.sin(x),
    "cos": lambda x, y: mp.cos(x),
    "sqrt": lambda x, y: _sqrt(x),
    "pow": _pow,
}


def elem(name: str, x: Number, y: Optional[Number] = None):
    """Elementary function ``name`` evaluated at the current mpmath precision.

    ``pow`` takes the exponent as ``y``; all other functions ignore it.
    """
    try:
        fun = _ELEMENTARY[name]
    except KeyError:
        raise ValueError(
            f"Unknown elementary function '{name}'. Available: {sorted(_ELEMENTARY)}"
        )
    x = mpmath.mpmathify(x)
    if y is not None:
        y = mpmath.mpmathify(y)
    return fun(x, y)


_BESSEL = {
    "J0": (lambda x: mp.besselj(0, x), False),
    "J1": (lambda x: mp.besselj(1, x), False),
    "Y0": (lambda x: mp.bessely(0, x), True),
    "I0": (lambda x: mp.besseli(0, x), False),
    "K0": (lambda x: mp.besselk(0, x), True),
}


def bessel(name: str, x: Number, ctx: Optional[PrecisionContext] = None) -> mpf:
    """Integer order Bessel function of a non-negative real argument.

    Y0 and K0 are logarithmically singular at the origin and require x > 0.
    If ``ctx`` is given the value is computed at its working precision,
    otherwise at the current mpmath precision.
    """
    try:
        fun, needs_positive = _BESSEL[name]
    except KeyError:
        raise ValueError(f"Unknown Bessel function '{name}'. Available: {sorted(_BESSEL)}")
    x = mpf(x)
    if needs_positive and x <= 0:
        raise DomainError(f"{name} requires x > 0, got {x}")
    if x < 0:
        raise DomainError(f"{name} requires x >= 0, got {x}")
    if ctx is None:
        return fun(x)
    with ctx.workdps():
        return fun(x)


_CONSTANTS = {
    "pi": lambda: +mp.pi,
    "euler_gamma": lambda: +mp.euler,
    "log2": lambda: +mp.ln2,
}


def constant(name: str, ctx: Optional[PrecisionContext] = None) -> mpf:
    try:
        fun = _CONSTANTS[name]
    except KeyError:
        raise ValueError(f"Unknown constant '{name}'. Available: {sorted(_CONSTANTS)}")
    if ctx is None:
        return fun()
    with ctx.workdps():
        return fun()


def to_decimal_string(x: Number, ctx: Optional[PrecisionContext] = None) -> str:
    """Scientific notation with lowercase 'e' carrying the full working precision."""
    ctx = resolve_context(ctx)
    with ctx.workdps():
        # min_fixed == max_fixed forces scientific notation
        return mp.nstr(
            mpf(x),
            ctx.working_digits,
            min_fixed=0,
            max_fixed=0,
            show_zero_exponent=True,
        )


def from_decimal_string(s: str, ctx: Optional[PrecisionContext] = None) -> mpf:
    ctx = resolve_context(ctx)
    with ctx.workdps():
        return mpf(s)


def relative_difference(value: Number, reference: Number) -> mpf:
    """|value - reference| / |reference|, or the absolute difference for a zero reference."""
    if reference == 0:
        return abs(value - reference)
    return abs(value - reference) / abs(reference)
