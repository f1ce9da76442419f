import os
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from mpmath import mpc, mpf

from oscint.integrands import integrand_catalog
from oscint.methods import EulerConfig, HyperfunctionConfig
from oscint.numerics.mp_numeric import DEFAULT_DECIMAL_DIGITS, MIN_DECIMAL_DIGITS, PrecisionContext

DIGITS_ENV_VAR = "OSCINT_DIGITS"
METHODS = ("hyperfunction", "euler", "both")
FORMATS = ("text", "json", "csv")
SWEEP_AXES = ("digits", "N", "zeta0_im")


def default_digits() -> int:
    """Default precision, overridable through the OSCINT_DIGITS environment variable."""
    raw = os.environ.get(DIGITS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_DECIMAL_DIGITS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{DIGITS_ENV_VAR} must be an integer, got {raw!r}")


def parse_complex(text: str) -> complex:
    """Parse '1j', '0+1j', 'i' or '0.5+2i' into a complex number."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}")


@dataclass(frozen=True)
class RunConfig:
    """Configuration of one ``oscint run`` invocation.

    Args:
        - integrals: Catalog ids to integrate, in report order.
        - method: "hyperfunction", "euler" or "both".
        - digits: Decimal digits of the computation.
        - n_coefficients: Highest Taylor coefficient index N.
        - zeta0: Expansion center of the defining function.
        - panels: Alternating panels K of the Euler baseline.
        - gl_points: Gauss-Legendre points per panel.
        - tol: Convergent agreement tolerance as a decimal string (None: default).
        - output_format: "text", "json" or "csv".
        - output: Report path, None for stdout.
        - workers: Worker processes; 1 runs everything in-process.
    """

    integrals: Tuple[int, ...] = field(default_factory=lambda: tuple(integrand_catalog.ids()))
    method: str = "hyperfunction"
    digits: int = field(default_factory=default_digits)
    n_coefficients: int = 100
    zeta0: complex = 1j
    panels: int = 50
    gl_points: int = 100
    tol: Optional[str] = None
    output_format: str = "text"
    output: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if not self.integrals:
            raise ValueError("at least one integral id is required")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.digits < MIN_DECIMAL_DIGITS:
            raise ValueError(f"digits must be >= {MIN_DECIMAL_DIGITS}, got {self.digits}")
        if not self.zeta0.imag > 0:
            raise ValueError(f"zeta0 must satisfy Im(zeta0) > 0, got {self.zeta0}")
        if self.n_coefficients < 2:
            raise ValueError(f"N must be >= 2, got {self.n_coefficients}")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.tol is not None and not mpf(self.tol) > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")

    @property
    def precision(self) -> PrecisionContext:
        return PrecisionContext(decimal_digits=self.digits)

    @property
    def methods(self) -> List[str]:
        return ["hyperfunction", "euler"] if self.method == "both" else [self.method]

    def hyperfunction_config(self) -> HyperfunctionConfig:
        ctx = self.precision
        tol = None
        if self.tol is not None:
            with ctx.workdps():
                tol = mpf(self.tol)
        return HyperfunctionConfig(mpc(self.zeta0), self.n_coefficients, ctx, tol)

    def euler_config(self) -> EulerConfig:
        return EulerConfig(self.panels, self.gl_points, self.precision)

    def with_axis(self, axis: str, value: str) -> "RunConfig":
        """Copy of this configuration with one sweep axis set to ``value``."""
        if axis == "digits":
            return replace(self, digits=int(value))
        if axis == "N":
            return replace(self, n_coefficients=int(value))
        if axis == "zeta0_im":
            return replace(self, zeta0=complex(self.zeta0.real, float(value)))
        raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
