"""Exact finite-N Toeplitz computations.

The predictor polynomial is obtained by the Levinson-Durbin recursion run in
extended precision (``numpy.longdouble``), which keeps the Gohberg-Semencul
inverse accurate to about 1e-10 relative even when ``T_N`` has a condition
number near 1e13.

Index convention for the Gohberg-Semencul formula: the inverse of the
``(N+1) x (N+1)`` matrix is built from the degree ``N+1`` predictor
``beta_0..beta_{N+1}``; for ``k <= l``

    X[k, l] = sum_{u=0}^{k} beta_{k-u} conj(beta_{l-u})
              - sum_{u=N+1-l}^{N+1-l+k} beta_u conj(beta_{u+l-k}).

Equivalently ``X = A A^H - C C^H`` with ``A`` and ``C`` the lower triangular
Toeplitz matrices with first columns ``(beta_0, ..., beta_N)`` and
``conj(beta_{N+1}, ..., beta_1)``. For real coefficients the placement of the
conjugations is immaterial; for complex Hermitian symbols it is not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BreakdownError, ConvergenceError, DomainError
from .symbols import SymbolSpec, phi_coeff_table

__all__ = [
    "ToeplitzMatrix",
    "PredictorPoly",
    "GSInverse",
    "build_matrix",
    "levinson",
    "predictor_poly",
    "gs_inverse",
    "gs_entry",
    "inverse_first_column",
    "inverse_trace",
    "lambda_min",
    "dense_inverse_oracle",
]

DENSE_ORACLE_MAX_N = 1024


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Hermitian Toeplitz matrix ``T_N(phi)`` of size ``N + 1``.

    Attributes:
        spec: The generating symbol.
        N: Matrix index bound; the size is ``N + 1``.
        coeffs: Fourier coefficients at lags ``0..N`` (extended precision).
    """

    spec: SymbolSpec
    N: int
    coeffs: np.ndarray = field(repr=False)

    @property
    def n_plus_1(self) -> int:
        return self.N + 1

    def entry(self, k: int, l: int):
        c = self.coeffs[abs(l - k)]
        return c if l >= k else np.conj(c)

    def dense(self, dtype=None) -> np.ndarray:
        c = self.coeffs
        if dtype is None:
            dtype = float if self.spec.is_real else complex
        idx = np.arange(self.N + 1)
        lag = idx[None, :] - idx[:, None]
        out = c[np.abs(lag)]
        out = np.where(lag >= 0, out, np.conj(out))
        return out.astype(dtype)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.dense() @ v


@dataclass(frozen=True)
class PredictorPoly:
    """Predictor polynomial ``P_M = sum_u gamma_u chi^u``.

    ``gamma`` is the first column of ``T_M(phi)^{-1}`` divided by the square
    root of its first entry, so ``gamma_0 > 0``.

    Attributes:
        degree: ``M``.
        gamma: Coefficients ``gamma_0..gamma_M`` (extended precision).
        reflection: Levinson reflection coefficients ``k_1..k_M``.
        first_column: Unnormalized first column of ``T_M(phi)^{-1}``.
    """

    degree: int
    gamma: np.ndarray = field(repr=False)
    reflection: np.ndarray = field(repr=False)
    first_column: np.ndarray = field(repr=False)

    def coefficients(self) -> np.ndarray:
        """Coefficients in working (double) precision."""
        g = self.gamma
        return np.asarray(g, dtype=complex if np.iscomplexobj(g) else float)

    def at_one(self) -> tuple[complex, complex]:
        """``(P(1), P'(1))``."""
        u = np.arange(self.degree + 1)
        g = self.gamma
        return complex(np.sum(g)), complex(np.sum(u * g))


def build_matrix(spec: SymbolSpec, N: int) -> ToeplitzMatrix:
    """``T_N(phi)`` with entry ``(k, l)`` equal to ``phi_hat(l - k)``."""
    if N < 1:
        raise DomainError("N must be at least 1")
    return ToeplitzMatrix(spec, N, phi_coeff_table(spec, N))


def levinson(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``T x = e_0`` for the Hermitian Toeplitz matrix with lags ``c``.

    Args:
        c: Lags ``c[0..M]``; the matrix entry ``(k, l)`` is ``c[l - k]``.

    Returns:
        ``(x, reflection)`` where ``x`` is the first column of the inverse.

    Raises:
        BreakdownError: If a reflection coefficient leaves the open unit disk.
    """
    c = np.asarray(c)
    n = len(c)
    a = np.zeros(n, dtype=c.dtype)
    a[0] = 1
    err = c[0].real
    refl = np.zeros(max(n - 1, 0), dtype=c.dtype)
    if not err > 0:
        raise BreakdownError("c[0] must be positive", step=0)
    for m in range(1, n):
        delta = np.sum(np.conj(c[m:0:-1]) * a[:m])
        k = -delta / err
        if not abs(k) < 1:
            raise BreakdownError(
                f"reflection coefficient {complex(k)!r} left the unit disk", step=m
            )
        a[1 : m + 1] = a[1 : m + 1] + k * np.conj(a[m - 1 :: -1])
        err = err * (1 - abs(k) ** 2)
        refl[m - 1] = k
    return a / err, refl


def predictor_poly(spec: SymbolSpec, M: int) -> PredictorPoly:
    """Degree ``M`` predictor of ``phi`` by the Levinson recursion.

    Raises:
        BreakdownError: If ``T_M(phi)`` is numerically not positive definite.
    """
    if M < 0:
        raise DomainError("degree must be nonnegative")
    c = phi_coeff_table(spec, M)
    x, refl = levinson(c)
    gamma = x / np.sqrt(x[0].real)
    return PredictorPoly(M, gamma, refl, x)


@dataclass(frozen=True)
class GSInverse:
    """Gohberg-Semencul representation of ``T_N(phi)^{-1}``.

    Attributes:
        beta: Predictor coefficients ``beta_0..beta_{N+1}``.
        size: ``N + 1``.
    """

    beta: np.ndarray = field(repr=False)
    size: int = 0

    def __post_init__(self):
        b = np.asarray(self.beta)
        b = b.astype(complex if np.iscomplexobj(b) else float)
        object.__setattr__(self, "beta", b)
        if self.size == 0:
            object.__setattr__(self, "size", len(b) - 1)
        if len(b) != self.size + 1:
            raise DomainError("beta must have length size + 1")

    @property
    def N(self) -> int:
        return self.size - 1

    def entry(self, k: int, l: int):
        n = self.N
        if not (0 <= k <= n and 0 <= l <= n):
            raise IndexError(f"entry ({k}, {l}) outside 0..{n}")
        b = self.beta
        swap = k > l
        if swap:
            k, l = l, k
        s1 = np.sum(b[k::-1] * np.conj(b[l - k : l + 1][::-1]))
        lo = n + 1 - l
        s2 = np.sum(b[lo : lo + k + 1] * np.conj(b[lo + l - k : lo + l + 1]))
        val = s1 - s2
        if swap:
            val = np.conj(val)
        return val.real if not np.iscomplexobj(b) else complex(val)

    def _parts(self):
        b = self.beta
        n = self.size
        return b[:n], b[n:0:-1]

    @staticmethod
    def _lower(h: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.convolve(h, v)[: len(v)]

    @classmethod
    def _lower_t(cls, h: np.ndarray, v: np.ndarray) -> np.ndarray:
        return cls._lower(h, v[::-1])[::-1]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Apply the inverse with two pairs of triangular Toeplitz products."""
        a, b = self._parts()
        return self._lower(a, self._lower_t(np.conj(a), v)) - self._lower(
            np.conj(b), self._lower_t(b, v)
        )

    def diagonal(self) -> np.ndarray:
        p = np.abs(self.beta) ** 2
        n = self.N
        head = np.cumsum(p[: n + 1])
        tail = np.cumsum(p[::-1])[: n + 1]
        return head - tail

    def first_column(self) -> np.ndarray:
        b = self.beta
        n = self.N
        k = np.arange(n + 1)
        return np.conj(b[0]) * b[k] - np.conj(b[n + 1 - k]) * b[n + 1]

    def dense(self) -> np.ndarray:
        a, b = self._parts()
        n = self.size
        idx = np.arange(n)
        lag = idx[:, None] - idx[None, :]
        A = np.where(lag >= 0, a[np.clip(lag, 0, None)], 0)
        C = np.where(lag >= 0, np.conj(b)[np.clip(lag, 0, None)], 0)
        return A @ np.conj(A).T - C @ np.conj(C).T


def gs_inverse(spec: SymbolSpec, N: int) -> GSInverse:
    """Gohberg-Semencul representation of ``T_N(phi)^{-1}``."""
    if N < 1:
        raise DomainError("N must be at least 1")
    p = predictor_poly(spec, N + 1)
    return GSInverse(p.gamma, N + 1)


def gs_entry(inv: GSInverse, k: int, l: int):
    """Entry ``(k, l)`` (zero-based) of the inverse."""
    return inv.entry(k, l)


def inverse_first_column(spec: SymbolSpec, N: int) -> np.ndarray:
    """First column of ``T_N(phi)^{-1}`` straight from the Levinson recursion."""
    x = predictor_poly(spec, N).first_column
    return np.asarray(x, dtype=complex if np.iscomplexobj(x) else float)


def inverse_trace(spec: SymbolSpec, N: int) -> float:
    """Trace of ``T_N(phi)^{-1}`` from running sums of ``|beta_u|^2``."""
    return float(np.sum(gs_inverse(spec, N).diagonal()))


def lambda_min(
    spec: SymbolSpec,
    N: int,
    tol: float = 1e-12,
    max_iter: int = 20000,
    inv: GSInverse | None = None,
) -> float:
    """Smallest eigenvalue of ``T_N(phi)`` by power iteration on the inverse.

    Args:
        spec: Symbol.
        N: Matrix size is ``N + 1``.
        tol: Relative Rayleigh-quotient change that stops the iteration.
        max_iter: Iteration cap.
        inv: Optional precomputed inverse representation.

    Raises:
        ConvergenceError: If the cap is reached; carries the last estimate.
    """
    if inv is None:
        inv = gs_inverse(spec, N)
    n = inv.size
    v = np.sin(np.pi * (np.arange(n) + 1) / (n + 1))
    if np.iscomplexobj(inv.beta):
        v = v.astype(complex)
    v /= np.linalg.norm(v)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = inv.matvec(v)
        new = float(np.real(np.vdot(v, w)))
        v = w / np.linalg.norm(w)
        if abs(new - lam) < tol * abs(new):
            return 1.0 / new
        lam = new
    raise ConvergenceError(
        "power iteration did not converge", last_iterate=1.0 / lam, iterations=max_iter
    )


def dense_inverse_oracle(spec: SymbolSpec, N: int, refinements: int = 2) -> np.ndarray:
    """Dense inverse with residuals formed in extended precision.

    A double-precision inverse is polished by Newton-Schulz style iterative
    refinement ``X <- X + X (I - T X)``, where the residual is computed in
    ``longdouble``. Intended as ground truth for tests.

    Raises:
        DomainError: If ``N`` exceeds the size guard.
    """
    if N > DENSE_ORACLE_MAX_N:
        raise DomainError(f"dense oracle limited to N <= {DENSE_ORACLE_MAX_N}")
    tm = build_matrix(spec, N)
    cplx = not spec.is_real
    T_ld = tm.dense(np.clongdouble if cplx else np.longdouble)
    T = tm.dense()
    X = np.linalg.inv(T).astype(T_ld.dtype)
    eye = np.eye(N + 1, dtype=T_ld.dtype)
    for _ in range(refinements):
        R = eye - T_ld @ X
        X = X + (np.asarray(X, dtype=T.dtype) @ np.asarray(R, dtype=T.dtype))
    return np.asarray(X, dtype=T.dtype)
