"""Lift a predictor polynomial through multiplication by |1 - chi|^2.

Given ``P = sum_{u=0}^{N+1} beta_u chi^u``, the first column of
``T_N(|1 - chi|^2 / |P|^2)^{-1}`` is, for ``k = 0..N``,

    conj(b0) sum_{u<=k} b_u + conj(b0) A_{N,k} / (N + 2 + A(P))

with ``A(P) = -2 Re(conj(P'(1)) P(1)) / |P(1)|^2`` and

    A_{N,k} = Q2'_k(1) P(1)/conj(P(1)) - Q1'_k(1) + sum_{u<=k} b_u,
    Q2'_k(1) = sum_{u=N+2-k}^{N+1} conj(b_u) (u - N - 1 + k),
    Q1'_k(1) = sum_{u=0}^{k} b_u (k - u + 2).

For complex coefficients the leading sum carries no conjugation; the
placement was fixed against direct Levinson on a Hermitian ``f1``.

The identity is exact. Since ``1/|P_{N+1}|^2`` shares its Fourier
coefficients up to lag ``N + 1`` with the symbol ``P`` was built from, the
lift of the predictor of ``phi_alpha`` is the first column of
``T_N(phi_{alpha+1})^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .symbols import SymbolSpec
from .toeplitz import PredictorPoly, predictor_poly

__all__ = ["LIFT_DENOMINATOR_OFFSET", "LiftResult", "lift_first_column", "lift_symbol"]

# N + 2 + A(P): pinned against the tridiagonal case P = 1, whose exact
# column is (N + 1 - k)/(N + 2).
LIFT_DENOMINATOR_OFFSET = 2


@dataclass(frozen=True)
class LiftResult:
    """Lifted first column with the auxiliary quantities used to build it.

    Attributes:
        column: Entries ``k = 0..N``.
        A_P: ``A(P)``.
        P1: ``P(1)``.
        dP1: ``P'(1)``.
    """

    column: np.ndarray = field(repr=False)
    A_P: float
    P1: complex
    dP1: complex

    @property
    def aux(self) -> dict:
        return {"A(P)": self.A_P, "P1": self.P1, "dP1": self.dP1}


def lift_first_column(P: PredictorPoly | np.ndarray) -> LiftResult:
    """First column of ``T_N(|1 - chi|^2 / |P|^2)^{-1}`` for ``deg P = N + 1``.

    Args:
        P: Predictor polynomial (or its coefficient array) of degree ``N + 1``
            with ``beta_0 > 0``.

    Raises:
        DomainError: If ``P(1) = 0`` or ``beta_0`` is not positive.
    """
    b = P.gamma if isinstance(P, PredictorPoly) else np.asarray(P)
    cplx = np.iscomplexobj(b)
    b = np.asarray(b, dtype=np.clongdouble if cplx else np.longdouble)
    if len(b) < 2:
        raise DomainError("predictor must have degree at least 1")
    if not (np.real(b[0]) > 0 and np.imag(b[0]) == 0):
        raise DomainError("predictor must be normalized with beta_0 > 0")
    N = len(b) - 2
    u = np.arange(N + 2)
    P1 = np.sum(b)
    dP1 = np.sum(u * b)
    if abs(P1) == 0:
        raise DomainError("P(1) = 0: the lift is singular")
    A_P = -2 * np.real(np.conj(dP1) * P1) / abs(P1) ** 2

    k = np.arange(N + 1)
    head = np.cumsum(b[: N + 1])
    weighted = np.cumsum(u[: N + 1] * b[: N + 1])
    q1 = (k + 2) * head - weighted
    # Q2' via j = N + 1 - u, j = 0..k-1: conj(b_{N+1-j}) (k - j)
    br = np.conj(b[::-1][: N + 1])
    c0 = np.concatenate([[0], np.cumsum(br)[:-1]])
    c1 = np.concatenate([[0], np.cumsum(u[: N + 1] * br)[:-1]])
    q2 = k * c0 - c1
    phase = P1 / np.conj(P1)
    a_nk = q2 * phase - q1 + head
    b0 = np.conj(b[0])
    col = b0 * head + b0 * a_nk / (N + LIFT_DENOMINATOR_OFFSET + A_P)
    col = np.asarray(col, dtype=complex if cplx else float)
    if not cplx:
        col = np.real(col)
    return LiftResult(col, float(A_P), complex(P1), complex(dP1))


def lift_symbol(spec: SymbolSpec, N: int) -> LiftResult:
    """Lift the degree ``N + 1`` predictor of ``spec`` to exponent ``alpha + 1``."""
    return lift_first_column(predictor_poly(spec, N + 1))
