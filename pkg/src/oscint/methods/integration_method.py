from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from mpmath import mpf

from oscint.integrands import Integrand


@dataclass
class IntegralResult:
    """Outcome of one integration method applied to one integrand.

    Args:
        - method: "hyperfunction" or "euler".
        - value: Real value of the integral.
        - err_estimate: Method specific error estimate.
        - eval_count: Integrand evaluations spent on the integral itself.
        - k_used: Convergent index (hyperfunction method).
        - panels_used: Alternating panels summed (Euler method).
        - imag_residue: |Im| of the continued fraction value (hyperfunction method).
        - scan_count: Evaluations spent locating the partition (Euler method).
    """

    method: str
    value: mpf
    err_estimate: mpf
    eval_count: int
    k_used: Optional[int] = None
    panels_used: Optional[int] = None
    imag_residue: Optional[mpf] = None
    scan_count: int = 0


class IntegrationMethod(ABC):
    name: str = ""

    @abstractmethod
    def integrate(self, integrand: Integrand) -> IntegralResult:
        raise NotImplementedError
