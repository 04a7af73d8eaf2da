"""Closed-form bounds and large-alpha asymptotics for c_alpha.

All bound expressions are assembled in log space; ``Gamma(4 alpha)`` and
``2^(4 alpha - 1)`` overflow double precision long before alpha = 100.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, ExclusionError
from .special import log_gamma

__all__ = [
    "BoundsReport",
    "k_alpha",
    "c_alpha_bounds",
    "above_one_bounds",
    "integer_reference_bounds",
    "half_case_lower",
    "c_alpha_large",
]

_OVERFLOW = 1e300
REGIMES = ("sub_half", "half_to_one", "above_one", "integer_reference")


def _lg(x: float) -> float:
    return float(log_gamma(x))


@dataclass(frozen=True)
class BoundsReport:
    """Interval ``[lower, upper]`` containing ``c_alpha``.

    Attributes:
        alpha: Exponent.
        log_lower: Natural log of the lower bound.
        log_upper: Natural log of the upper bound.
        regime: One of ``sub_half``, ``half_to_one``, ``above_one``,
            ``integer_reference``.
    """

    alpha: float
    log_lower: float
    log_upper: float
    regime: str

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")

    @property
    def log_space(self) -> bool:
        """True when the upper bound is too large to print as a float."""
        return self.log_upper > math.log(_OVERFLOW)

    @property
    def lower(self) -> float:
        return math.exp(self.log_lower) if self.log_lower < 690 else math.inf

    @property
    def upper(self) -> float:
        return math.exp(self.log_upper) if self.log_upper < 690 else math.inf

    def contains(self, value: float) -> bool:
        if value <= 0:
            return False
        lv = math.log(value)
        return self.log_lower <= lv <= self.log_upper

    def to_dict(self) -> dict:
        out = {"alpha": self.alpha, "regime": self.regime, "log_space": self.log_space}
        out["log_lower"] = self.log_lower
        out["log_upper"] = self.log_upper
        if not self.log_space:
            out["lower"] = self.lower
            out["upper"] = self.upper
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def k_alpha(alpha: float) -> float:
    """``1/(2a) + Gamma(2a)^2/Gamma(4a) + Gamma(1-2a) Gamma(a)/Gamma(1-a)``."""
    if not 0 < alpha < 0.5:
        raise DomainError("K_alpha is defined for 0 < alpha < 1/2")
    a = alpha
    return (
        1 / (2 * a)
        + math.exp(2 * _lg(2 * a) - _lg(4 * a))
        + math.exp(_lg(1 - 2 * a) + _lg(a) - _lg(1 - a))
    )


def _sub_half(a: float) -> BoundsReport:
    # [Gamma(1-a)/Gamma(1-2a)] [Gamma(a)/K_a] and Gamma(a)(4a+1)Gamma(1-a)/Gamma(1-2a)
    ratio = _lg(1 - a) - _lg(1 - 2 * a)
    lo = ratio + _lg(a) - math.log(k_alpha(a))
    hi = _lg(a) + math.log(4 * a + 1) + ratio
    return BoundsReport(a, lo, hi, "sub_half")


def _half_to_one(a: float) -> BoundsReport:
    lo = _lg(4 * a) + 2 * _lg(a) + math.log(2 * a - 1) - 2 * _lg(2 * a)
    hi = 2 * _lg(a) + math.log((2 * a + 1) * (2 * a + 2) * (2 * a + 3) / 2)
    return BoundsReport(a, lo, hi, "half_to_one")


def above_one_bounds(alpha: float) -> BoundsReport:
    """Bounds for ``alpha > 1``; also evaluable at integers for reference.

    ``Gamma(a)^2 Gamma(4a) / (Gamma(2a-1) Gamma(2a+1))`` and
    ``Gamma(a)^2 (2a-1)(4a-1) 2^(4a-1) / 2``.
    """
    if alpha <= 1:
        raise DomainError("above_one_bounds needs alpha > 1")
    a = alpha
    lo = 2 * _lg(a) + _lg(4 * a) - _lg(2 * a - 1) - _lg(2 * a + 1)
    hi = (
        2 * _lg(a)
        - math.log(2)
        + math.log(2 * a - 1)
        + math.log(4 * a - 1)
        + (4 * a - 1) * math.log(2)
    )
    return BoundsReport(a, lo, hi, "above_one")


def integer_reference_bounds(n: int) -> BoundsReport:
    """Reference interval for integer exponents (reported, not asserted).

    Lower bound as in the ``alpha > 1`` case; upper bound
    ``(4n+1)/(2n+1) Gamma(4n+1) Gamma(n+1)^2 / Gamma(2n+1)^2``.
    """
    if n < 1 or int(n) != n:
        raise DomainError("integer reference needs a positive integer")
    a = float(n)
    lo = 2 * _lg(a) + _lg(4 * a) - _lg(2 * a - 1) - _lg(2 * a + 1)
    hi = (
        math.log((4 * a + 1) / (2 * a + 1))
        + _lg(4 * a + 1)
        + 2 * _lg(a + 1)
        - 2 * _lg(2 * a + 1)
    )
    return BoundsReport(a, lo, hi, "integer_reference")


def c_alpha_bounds(alpha: float) -> BoundsReport:
    """Interval for ``c_alpha`` in the regime containing ``alpha``.

    Raises:
        ExclusionError: For ``alpha = 1/2`` (use :func:`half_case_lower`) or a
            positive integer (use :func:`integer_reference_bounds`).
        DomainError: For ``alpha <= 0``.
    """
    if not math.isfinite(alpha) or alpha <= 0:
        raise DomainError("alpha must be a positive real")
    if alpha == 0.5:
        raise ExclusionError("alpha = 1/2 has no c_alpha; see half_case_lower")
    if alpha == int(alpha):
        raise ExclusionError("integer alpha; see integer_reference_bounds")
    if alpha < 0.5:
        return _sub_half(alpha)
    if alpha < 1:
        return _half_to_one(alpha)
    return above_one_bounds(alpha)


def half_case_lower(N: int) -> float:
    """``pi / (N ln N)``, the lower bound on ``lambda_min`` at ``alpha = 1/2``."""
    if int(N) != N or N < 3:
        raise DomainError("N must be an integer >= 3")
    return math.pi / (N * math.log(N))


def c_alpha_large(alpha: float) -> float:
    """``ln c_alpha`` from the large-alpha formula.

    ``ln[sqrt(8 pi a) (4a/e)^(2a)] = ln(8 pi a)/2 + 2a (ln 4a - 1)``.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return 0.5 * math.log(8 * math.pi * alpha) + 2 * alpha * (math.log(4 * alpha) - 1)
