"""Two independent estimators of the minimal-eigenvalue constant c_alpha.

Kernel route: ``c_alpha = Gamma(alpha)^2 / rho(G_alpha)`` where ``rho`` is the
spectral radius of the integral operator with kernel ``G_alpha`` on
``[0, 1]``, approximated by a Nystrom discretization.

Toeplitz route: extrapolate ``N^(2 alpha) lambda_min(T_N) / f1(1)`` in ``1/N``.

The kernel is not smooth across the diagonal: near ``x = y`` it behaves like
``c |x - y|^(2 alpha - 1)`` (with a logarithm when ``2 alpha - 1`` is an even
integer). Plain Gauss-Legendre Nystrom then converges only algebraically, and
not at all for ``alpha < 1/2``. The discretization below subtracts that term
analytically (Kress-style singularity subtraction), which restores rapid
convergence for every ``alpha != 1/2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_legendre

from .asymptotics import green_kernel
from .errors import ConvergenceError, DomainError, ExclusionError
from .special import gamma_fn, log_gamma, log_gamma_signed
from .symbols import SymbolSpec
from .toeplitz import lambda_min

__all__ = [
    "KernelOperator",
    "CAlphaEstimate",
    "singular_part",
    "nystrom",
    "spectral_radius",
    "perron_vector",
    "iterated_trace",
    "richardson",
    "c_alpha_kernel",
    "c_alpha_toeplitz",
]

DEFAULT_KERNEL_RESOLUTIONS = (64, 128, 256)
DEFAULT_TOEPLITZ_SIZES = (256, 512, 1024)


@dataclass(frozen=True)
class KernelOperator:
    """Nystrom discretization of an integral operator on ``[0, 1]``.

    Attributes:
        nodes: Quadrature points in ``(0, 1)``.
        weights: Positive weights summing to 1.
        kmat: Kernel matrix; diagonal entries carry the singular correction.
        alpha: Exponent of ``G_alpha`` (``None`` for a custom kernel).
    """

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    kmat: np.ndarray = field(repr=False)
    alpha: float | None = None

    def __post_init__(self):
        for name in ("nodes", "weights", "kmat"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def m(self) -> int:
        return len(self.nodes)

    def symmetric(self) -> np.ndarray:
        """``W^(1/2) K W^(1/2)``, similar to the Nystrom matrix ``K W``."""
        sw = np.sqrt(self.weights)
        return sw[:, None] * self.kmat * sw[None, :]


@dataclass(frozen=True)
class CAlphaEstimate:
    """Estimate of ``c_alpha`` from a sequence of resolutions.

    Attributes:
        alpha: Exponent.
        method: ``kernel`` or ``toeplitz``.
        raw: ``(resolution, value)`` pairs.
        extrapolated: Extrapolated value.
        err_indicator: Relative change between the last two raw values.
    """

    alpha: float
    method: str
    raw: tuple[tuple[int, float], ...]
    extrapolated: float
    err_indicator: float

    @property
    def flagged(self) -> bool:
        """True when the extrapolation leaves the range of the last two values."""
        if len(self.raw) < 2:
            return False
        a, b = self.raw[-2][1], self.raw[-1][1]
        return not min(a, b) <= self.extrapolated <= max(a, b)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "method": self.method,
            "raw": [[int(r), float(v)] for r, v in self.raw],
            "extrapolated": float(self.extrapolated),
            "err_indicator": float(self.err_indicator),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "CAlphaEstimate":
        return cls(
            float(obj["alpha"]),
            obj["method"],
            tuple((int(r), float(v)) for r, v in obj["raw"]),
            float(obj["extrapolated"]),
            float(obj["err_indicator"]),
        )


def singular_part(alpha: float):
    """Leading non-smooth term of ``G_alpha`` near the diagonal.

    Returns:
        ``(S, int_S)`` where ``S(d)`` is the singular term as a function of
        ``d = |x - y| > 0`` and ``int_S(x)`` is ``int_0^1 S(|x - y|) dy``.
        ``S`` vanishes as ``d -> 0`` whenever ``alpha > 1/2``.
    """
    q = 2 * alpha - 1
    half = q / 2
    if alpha > 1 and half == int(half):
        # 2 alpha - 1 = 2n: c d^(2n) log d
        n = int(half)
        lg, sg = log_gamma_signed(1 - alpha)
        kappa = -math.exp(float(log_gamma(alpha)) - lg - math.lgamma(2 * n + 1)) / sg
        p = 2 * n + 1

        def S(d):
            return kappa * d ** (2 * n) * np.log(d)

        def int_S(x):
            total = 0.0
            for a in (x, 1 - x):
                with np.errstate(divide="ignore", invalid="ignore"):
                    term = a**p * (np.log(a) / p - 1 / p**2)
                total = total + np.where(a > 0, term, 0.0)
            return kappa * total

        return S, int_S

    if alpha == int(alpha):
        n = int(alpha)
        c = (-1) ** n * math.factorial(n - 1) / (2 * math.factorial(2 * n - 1))
    else:
        c = float(gamma_fn(alpha) * gamma_fn(1 - 2 * alpha) / gamma_fn(1 - alpha))

    def S(d):
        return c * d**q

    def int_S(x):
        return c * (x ** (q + 1) + (1 - x) ** (q + 1)) / (q + 1)

    return S, int_S


def nystrom(
    alpha: float,
    m: int,
    kernel: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
) -> KernelOperator:
    """Gauss-Legendre Nystrom discretization of ``G_alpha``.

    Args:
        alpha: Exponent, ``alpha > 0`` and ``alpha != 1/2``.
        m: Number of nodes, at least 8.
        kernel: Optional smooth replacement kernel (used as a test hook); no
            singular correction is applied to it.

    Returns:
        The discretized operator.
    """
    if m < 8:
        raise DomainError("resolution must be at least 8")
    if kernel is None and alpha <= 0:
        raise DomainError("alpha must be positive")
    if kernel is None and alpha == 0.5:
        raise ExclusionError("the kernel route excludes alpha = 1/2")
    s, w = roots_legendre(m)
    x = (s + 1) / 2
    w = w / 2
    if kernel is not None:
        K = np.asarray(kernel(x[:, None], x[None, :]), dtype=float) * np.ones((m, m))
        return KernelOperator(x, w, K, None)
    with np.errstate(divide="ignore"):
        K = green_kernel(alpha, x[:, None], x[None, :])
    S, int_S = singular_part(alpha)
    d = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(d, 1.0)
    Smat = S(d)
    np.fill_diagonal(Smat, 0.0)
    R = x * (1 - x)
    # limit of G - S on the diagonal
    H = R ** (2 * alpha - 1) / (2 * alpha - 1)
    diag = (int_S(x) - Smat @ w + w * H) / w
    K = K.copy()
    np.fill_diagonal(K, diag)
    return KernelOperator(x, w, K, alpha)


def spectral_radius(
    op: KernelOperator, tol: float = 1e-13, max_iter: int = 10000
) -> float:
    """Largest eigenvalue of the symmetrized operator by power iteration.

    Raises:
        ConvergenceError: If the Rayleigh quotient does not settle.
    """
    A = op.symmetric()
    v = np.sqrt(op.weights)
    v = v / np.linalg.norm(v)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = A @ v
        new = float(v @ w)
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        v = w / nrm
        if abs(new - lam) <= tol * abs(new):
            return new
        lam = new
    raise ConvergenceError("power iteration did not converge", last_iterate=lam, iterations=max_iter)


def perron_vector(op: KernelOperator, tol: float = 1e-13, max_iter: int = 10000) -> np.ndarray:
    """Dominant eigenvector of the symmetrized operator (unit norm)."""
    A = op.symmetric()
    v = np.sqrt(op.weights)
    v = v / np.linalg.norm(v)
    for _ in range(max_iter):
        w = A @ v
        w = w / np.linalg.norm(w)
        if np.linalg.norm(w - v) < tol:
            return w
        v = w
    raise ConvergenceError("power iteration did not converge", last_iterate=v, iterations=max_iter)


def iterated_trace(alpha: float, s: int, m: int, log: bool = False) -> float:
    """``int_0^1 (*^s G_alpha)(t, t) dt`` in the Nystrom discretization.

    For ``s = 1`` the diagonal of ``G_alpha`` is integrated directly (this needs
    ``alpha > 1/2``). For ``s >= 2`` the value is ``trace(A^s)`` summed over
    eigenvalues, with the largest one factored out so that ``log=True`` stays
    finite for large ``s``. The iterated kernel has a finite diagonal only
    when ``2 s alpha > 1``.
    """
    if s < 1:
        raise DomainError("s must be a positive integer")
    if 2 * s * alpha <= 1:
        raise DomainError("the s-fold kernel diverges on the diagonal")
    if s == 1:
        s_, w = roots_legendre(m)
        x = (s_ + 1) / 2
        val = float(np.sum(w / 2 * green_kernel(alpha, x, x)))
        return math.log(val) if log else val
    lam = np.linalg.eigvalsh(nystrom(alpha, m).symmetric())
    top = lam[-1]
    rest = np.sum((lam / top) ** s)
    logval = s * math.log(top) + math.log(rest)
    return logval if log else math.exp(logval)


def richardson(hs: Sequence[float], values: Sequence[float], orders: Sequence[float]) -> float:
    """Richardson table in step ``h`` eliminating the given error orders in turn."""
    h = list(hs)
    v = list(values)
    for p in orders:
        if len(v) < 2:
            break
        v = [
            (v[i + 1] * (h[i] / h[i + 1]) ** p - v[i]) / ((h[i] / h[i + 1]) ** p - 1)
            for i in range(len(v) - 1)
        ]
        h = h[1:]
    return float(v[-1])


def _observed_order(hs, values) -> float | None:
    if len(values) < 3:
        return None
    d1 = values[-2] - values[-3]
    d2 = values[-1] - values[-2]
    if d1 == 0 or d2 == 0 or np.sign(d1) != np.sign(d2):
        return None
    p = math.log(abs(d1 / d2)) / math.log(hs[-3] / hs[-2])
    return p


def _check_alpha(alpha: float) -> None:
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if alpha == 0.5:
        raise ExclusionError(
            "c_alpha is not defined at alpha = 1/2; see bounds.half_case_lower"
        )


def c_alpha_kernel(
    alpha: float, resolutions: Sequence[int] = DEFAULT_KERNEL_RESOLUTIONS, tol: float = 1e-13
) -> CAlphaEstimate:
    """``Gamma(alpha)^2 / rho(G_alpha)`` with extrapolation in ``1/m``.

    The extrapolation uses the observed order from the last three
    resolutions when it is well defined and at least 1; once the raw values
    agree to rounding the finest one is returned unchanged.
    """
    _check_alpha(alpha)
    res = sorted(int(m) for m in resolutions)
    rhos = [spectral_radius(nystrom(alpha, m), tol) for m in res]
    hs = [1.0 / m for m in res]
    rho_ext = rhos[-1]
    p = _observed_order(hs, rhos)
    if p is not None and p >= 1 and abs(rhos[-1] - rhos[-2]) > 1e-13 * abs(rhos[-1]):
        rho_ext = richardson(hs[-2:], rhos[-2:], [p])
    g2 = math.exp(2 * float(log_gamma(alpha)))
    raw = tuple((m, g2 / r) for m, r in zip(res, rhos))
    err = abs(raw[-1][1] - raw[-2][1]) / abs(raw[-1][1]) if len(raw) > 1 else float("nan")
    return CAlphaEstimate(alpha, "kernel", raw, g2 / rho_ext, err)


def c_alpha_toeplitz(
    alpha: float,
    Ns: Sequence[int] = DEFAULT_TOEPLITZ_SIZES,
    spec: SymbolSpec | None = None,
    tol: float = 1e-13,
) -> CAlphaEstimate:
    """Extrapolate ``N^(2 alpha) lambda_min(T_N(phi_alpha)) / f1(1)`` in ``1/N``.

    A Richardson table removes the ``1/N`` term first and then ``1/N^2``
    when three or more sizes are given.
    """
    _check_alpha(alpha)
    if spec is None:
        spec = SymbolSpec(alpha)
    elif spec.alpha != alpha:
        spec = spec.with_alpha(alpha)
    f1 = spec.f1_at_one
    if f1 <= 0:
        raise DomainError("f1(1) must be positive")
    sizes = sorted(int(n) for n in Ns)
    vals = [n ** (2 * alpha) * lambda_min(spec, n, tol) / f1 for n in sizes]
    orders = [1, 2][: len(sizes) - 1]
    ext = richardson([1.0 / n for n in sizes], vals, orders) if orders else vals[-1]
    err = abs(vals[-1] - vals[-2]) / abs(vals[-1]) if len(vals) > 1 else float("nan")
    return CAlphaEstimate(alpha, "toeplitz", tuple(zip(sizes, vals)), ext, err)
