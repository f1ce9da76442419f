import threading
from typing import Callable, Optional

from mpmath import mpf


class Integrand:
    """Real valued function on (0, inf) with an evaluation counter.

    Args:
        - fun: Callable mapping an mpf x > 0 to an mpf, evaluated at the current
          mpmath precision.
        - name: Short human readable name.
        - singular_at_zero: Whether fun has an integrable singularity at x = 0.

    The counter is protected by a lock so that concurrent node evaluations
    keep it exact.
    """

    def __init__(
        self,
        fun: Callable[[mpf], mpf],
        name: str = "f",
        singular_at_zero: bool = False,
    ):
        self._fun = fun
        self.name = name
        self.singular_at_zero = singular_at_zero
        self._eval_count = 0
        self._lock = threading.Lock()

    def __call__(self, x) -> mpf:
        with self._lock:
            self._eval_count += 1
        return self._fun(x)

    def __repr__(self) -> str:
        return f"Integrand({self.name!r}, singular_at_zero={self.singular_at_zero})"

    @property
    def eval_count(self) -> int:
        return self._eval_count

    def reset_count(self) -> None:
        with self._lock:
            self._eval_count = 0

    def combine(self, alpha, other: "Integrand", beta) -> "Integrand":
        """alpha * self + beta * other as a new integrand (its own counter)."""
        return Integrand(
            lambda x: alpha * self._fun(x) + beta * other._fun(x),
            name=f"{alpha}*{self.name} + {beta}*{other.name}",
            singular_at_zero=self.singular_at_zero or other.singular_at_zero,
        )
