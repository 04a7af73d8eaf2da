"""Closed-form asymptotics for inverse entries, traces and predictor values.

The limit kernel

    G_alpha(x, y) = x^a y^a int_{max(x,y)}^1 (t-x)^(a-1) (t-y)^(a-1) t^(-2a) dt

is evaluated through the substitution ``t = xy/v`` followed by a shift, which
turns it into a function of two numbers only:

    G_alpha(x, y) = F(R, d) = int_0^R r^(a-1) (r + d)^(a-1) dr,
    R = min(x,y) (1 - max(x,y)),  d = |x - y|.

``F`` is integrated with Gauss-Jacobi on ``[0, min(R, d)]`` (exact weight for
the ``r^(a-1)`` endpoint) and Gauss-Legendre panels in ``log r`` on
``[d, R]``, which is smooth there. Both pieces are fully vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError
from .special import log_beta, log_gamma, log_gamma_signed
from .symbols import SymbolSpec, beta_coeffs, spectral_factor

__all__ = [
    "AsymptoticEntry",
    "kernel_F",
    "kernel_G",
    "green_kernel",
    "first_column_asymptotic",
    "inverse_entry_asymptotic",
    "trace_constant",
    "trace_constant_factorial",
    "trace_constant_beta_exact",
    "trace_asymptotic",
    "kernel_h",
    "edge_asymptotics",
    "predictor_at_one",
]

_QUAD_NODES = 24
_LOG_PANEL = 2.0


@dataclass(frozen=True)
class AsymptoticEntry:
    """Value of an asymptotic formula together with its power of ``N``.

    Attributes:
        value: The formula evaluated at the given ``N``.
        order: Exponent of ``N`` carried by the formula.
        formula_id: ``predictor``, ``inverse`` or ``trace``.
    """

    value: float
    order: float
    formula_id: str

    _ORDERS = {"predictor": (1, -1), "inverse": (2, -1), "trace": (2, 0)}

    @classmethod
    def of(cls, formula_id: str, alpha: float, value: float) -> "AsymptoticEntry":
        a, b = cls._ORDERS[formula_id]
        return cls(float(value), a * alpha + b, formula_id)


def _default_spec(alpha: float, spec: SymbolSpec | None) -> SymbolSpec:
    if spec is None:
        return SymbolSpec(alpha)
    if spec.alpha != alpha:
        spec = spec.with_alpha(alpha)
    return spec


@lru_cache(maxsize=64)
def _jacobi(n: int, b: float):
    s, w = roots_jacobi(n, 0.0, b)
    return (1 + s) / 2, w


@lru_cache(maxsize=8)
def _legendre01(n: int):
    s, w = roots_legendre(n)
    return (s + 1) / 2, w / 2


def kernel_F(alpha: float, R, d, n: int = _QUAD_NODES) -> np.ndarray:
    """``int_0^R r^(a-1) (r+d)^(a-1) dr`` for arrays ``R >= 0``, ``d >= 0``.

    Returns ``inf`` where ``d = 0`` and ``alpha <= 1/2`` (divergent).
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    R, d = np.broadcast_arrays(np.asarray(R, float), np.asarray(d, float))
    out = np.zeros(R.shape)
    diag = d == 0
    if np.any(diag):
        if alpha > 0.5:
            out[diag] = R[diag] ** (2 * alpha - 1) / (2 * alpha - 1)
        else:
            out[diag] = np.where(R[diag] > 0, np.inf, 0.0)
    off = ~diag & (R > 0)
    if not np.any(off):
        return out
    Rm, dm = R[off], d[off]
    # [0, a]: r = a w, Jacobi weight absorbs w^(a-1)
    a = np.minimum(Rm, dm)
    w, W = _jacobi(n, alpha - 1.0)
    part1 = a**alpha * 2.0 ** (-alpha) * (((a[:, None] * w + dm[:, None]) ** (alpha - 1)) @ W)
    # [d, R]: r = d e^v, integrand d^(2a-1) e^((2a-1) v) (1 + e^-v)^(a-1)
    L = np.log(np.maximum(Rm / dm, 1.0))
    panels = max(1, int(math.ceil(L.max() / _LOG_PANEL)))
    t, wt = _legendre01(n)
    t = ((np.arange(panels)[:, None] + t[None, :]) / panels).ravel()
    wt = np.tile(wt / panels, panels)
    v = L[:, None] * t
    f = np.exp((2 * alpha - 1) * v) * (1 + np.exp(-v)) ** (alpha - 1)
    part2 = dm ** (2 * alpha - 1) * L * (f @ wt)
    out[off] = part1 + part2
    return out


def green_kernel(alpha: float, x, y) -> np.ndarray:
    """Vectorized ``G_alpha`` on ``[0, 1]^2``; ``inf`` on the diagonal if ``alpha <= 1/2``."""
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    if np.any((x < 0) | (x > 1) | (y < 0) | (y > 1)):
        raise DomainError("kernel arguments must lie in [0, 1]")
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    return kernel_F(alpha, lo * (1 - hi), hi - lo)


def kernel_G(alpha: float, x, y):
    """Limit kernel ``G_alpha(x, y)`` of the rescaled inverse entries.

    Args:
        alpha: Positive exponent.
        x: Point(s) in ``[0, 1]``.
        y: Point(s) in ``[0, 1]``.

    Returns:
        Float for scalar input, array otherwise.

    Raises:
        DomainError: For a diagonal request with ``alpha <= 1/2``.
    """
    xa, ya = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    if alpha <= 0.5 and np.any(xa == ya):
        raise DomainError("G_alpha diverges on the diagonal for alpha <= 1/2")
    out = green_kernel(alpha, xa, ya)
    return float(out) if out.ndim == 0 else out


def _check_unit(x: float, name: str = "x") -> None:
    if not 0 < x < 1:
        raise DomainError(f"{name} must lie in (0, 1)")


def first_column_asymptotic(
    alpha: float, x: float, N: int, spec: SymbolSpec | None = None
) -> float:
    """Bulk approximation of ``(T_N^{-1})_{[Nx]+1, 1}``.

    ``conj(beta_0) N^(a-1) x^(a-1) (1-x)^a / (Gamma(a) g1(1))``.
    """
    _check_unit(x)
    spec = _default_spec(alpha, spec)
    beta0 = 1.0 / spectral_factor(spec.f1, 0).values[0]
    lead = math.exp((alpha - 1) * math.log(N) - float(log_gamma(alpha)))
    return float(np.conj(beta0).real) * lead * x ** (alpha - 1) * (1 - x) ** alpha / spec.g1_at_one()


def inverse_entry_asymptotic(
    alpha: float, x: float, y: float, N: int, spec: SymbolSpec | None = None
) -> float:
    """``N^(2a-1) G_alpha(x, y) / (Gamma(a)^2 f1(1))``."""
    _check_unit(x)
    _check_unit(y, "y")
    spec = _default_spec(alpha, spec)
    g = kernel_G(alpha, x, y)
    scale = math.exp((2 * alpha - 1) * math.log(N) - 2 * float(log_gamma(alpha)))
    return scale * g / spec.f1_at_one


def trace_constant(alpha: float) -> float:
    """``B(2a, 2a) / (Gamma(a)^2 (2a - 1))`` for ``alpha > 1/2``."""
    if alpha <= 0.5:
        raise DomainError("trace asymptotic requires alpha > 1/2")
    return math.exp(float(log_beta(2 * alpha, 2 * alpha)) - 2 * float(log_gamma(alpha))) / (
        2 * alpha - 1
    )


def trace_constant_factorial(n: int) -> Fraction:
    """``(2n-1)! (2n-2)! / ((4n-1)! ((n-1)!)^2)`` for integer ``n >= 1``."""
    if n < 1 or int(n) != n:
        raise DomainError("factorial form needs a positive integer")
    f = math.factorial
    return Fraction(f(2 * n - 1) * f(2 * n - 2), f(4 * n - 1) * f(n - 1) ** 2)


def trace_constant_beta_exact(n: int) -> Fraction:
    """The Beta form evaluated in exact rational arithmetic for integer ``n``."""
    if n < 1 or int(n) != n:
        raise DomainError("exact Beta form needs a positive integer")
    f = math.factorial
    beta = Fraction(f(2 * n - 1) ** 2, f(4 * n - 1))
    return beta / (f(n - 1) ** 2 * (2 * n - 1))


def trace_asymptotic(alpha: float, N: int, spec: SymbolSpec | None = None) -> float:
    """``N^(2a) B(2a, 2a) / (Gamma(a)^2 (2a - 1) f1(1))``."""
    spec = _default_spec(alpha, spec)
    return N ** (2 * alpha) * trace_constant(alpha) / spec.f1_at_one


def _quad(f, a, b, **kw):
    return quad(f, a, b, epsabs=0.0, epsrel=1e-12, limit=400, **kw)[0]


def kernel_h(alpha: float, x: float, y: float, double_count: bool = False) -> float:
    """Second-order kernel ``h_alpha`` for ``0 < alpha < 1/2``.

    With ``m = min(x, y)``, ``D = |x - y|`` and ``mu = D + t``:

        h = int_0^m t^(a-1) mu^(a-1) ((1-t)^a (1-mu)^a - 1) dt
            - int_{1-m}^1 t^(a-1) (1-t)^a (t-D)^(a-1) (1-t+D)^a dt
            - int_m^inf t^(a-1) mu^(a-1) dt.

    The bracket in the first integral collects the three products of the
    expansion ``gamma = beta + (gamma - beta)``, each counted once. Setting
    ``double_count`` uses ``2(1-t)^a(1-mu)^a - (1-t)^a - (1-mu)^a`` instead,
    which counts ``((1-t)^a - 1)((1-mu)^a - 1)`` twice; it is kept for
    comparison only.

    Raises:
        DomainError: If ``alpha`` is outside ``(0, 1/2)``.
    """
    if not 0 < alpha < 0.5:
        raise DomainError("h_alpha is defined for 0 < alpha < 1/2")
    _check_unit(x)
    _check_unit(y, "y")
    a = alpha
    m = min(x, y)
    D = abs(x - y)

    if double_count:

        def bracket(t):
            p, q = (1 - t) ** a, (1 - D - t) ** a
            return 2 * p * q - p - q

    else:

        def bracket(t):
            return ((1 - t) * (1 - D - t)) ** a - 1

    # first integral; the weight carries t^(a-1), the rest may be near-singular at t = 0 when D is small
    g1 = lambda t: (D + t) ** (a - 1) * bracket(t)
    if 0 < D < m:
        first = _quad(g1, 0, D, weight="alg", wvar=(a - 1, 0)) + _quad(
            lambda t: t ** (a - 1) * g1(t), D, m
        )
    elif D == 0:
        # bracket(t) / t -> -2a as t -> 0 in both variants
        first = _quad(
            lambda t: bracket(t) / t if t > 0 else -2 * a, 0, m, weight="alg", wvar=(2 * a - 1, 0)
        )
    else:
        first = _quad(g1, 0, m, weight="alg", wvar=(a - 1, 0))

    # second integral; (1-t)^a is the weight at the right end
    g2 = lambda t: t ** (a - 1) * (t - D) ** (a - 1) * (1 - t + D) ** a
    second = _quad(g2, 1 - m, 1, weight="alg", wvar=(0, a))

    # third integral split at 1; tail via t = 1/u gives u^(-2a) (D u + 1)^(a-1)
    lo = min(m, 1.0)
    third = _quad(lambda t: t ** (a - 1) * (D + t) ** (a - 1), lo, 1.0)
    third += _quad(lambda u: (D * u + 1) ** (a - 1), 0.0, 1.0, weight="alg", wvar=(-2 * a, 0))
    return first - second - third


def edge_asymptotics(
    alpha: float, k: int, N: int, spec: SymbolSpec | None = None
) -> tuple[complex | float, complex | float]:
    """Small-``k`` approximations of the first column of ``T_N^{-1}``.

    Returns:
        ``(top, bottom)`` where ``top`` approximates entry ``(k, 0)``, namely
        ``conj(b0) (b_k - a^2/N b'_k)``, and ``bottom`` approximates entry
        ``(N - k, 0)``, namely ``conj(b0) r b'_k a / N``. Here ``b`` and ``b'``
        are the coefficients of ``1/g`` at exponents ``a`` and ``a + 1``, and
        ``r = g1(1) / conj(g1(1))`` equals 1 when ``g1(1)`` is real.
    """
    spec = _default_spec(alpha, spec)
    b = beta_coeffs(spec, k).values
    b1 = beta_coeffs(spec.with_alpha(alpha + 1), k).values
    g1 = spectral_factor(spec.f1, spec.f1.degree).values
    g1_one = complex(np.sum(g1))
    ratio = g1_one / g1_one.conjugate()
    b0 = np.conj(b[0])
    top = b0 * (b[k] - alpha**2 / N * b1[k])
    bottom = b0 * ratio * b1[k] * alpha / N
    if spec.is_real:
        return float(np.real(top)), float(np.real(bottom))
    return complex(top), complex(bottom)


def predictor_at_one(
    alpha: float, N: int, spec: SymbolSpec | None = None
) -> tuple[float, float]:
    """Asymptotic ``(P(1), P'(1))`` for the degree ``N + 1`` predictor.

    ``P(1) ~ N^a Gamma(a+1) / (Gamma(2a+1) g1(1))`` and
    ``P'(1) ~ N^(a+1) Gamma(a+1)^2 / (Gamma(2a+2) Gamma(a) g1(1))``.
    """
    spec = _default_spec(alpha, spec)
    g = spec.g1_at_one()
    lg = lambda z: float(log_gamma(z))
    p = math.exp(alpha * math.log(N) + lg(alpha + 1) - lg(2 * alpha + 1)) / g
    if alpha == 0:
        return p, 0.0
    lga, sign = log_gamma_signed(alpha)
    dp = sign * math.exp(
        (alpha + 1) * math.log(N) + 2 * lg(alpha + 1) - lg(2 * alpha + 2) - lga
    ) / g
    return p, dp
