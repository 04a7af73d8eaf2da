"""Toeplitz matrices with a Fisher-Hartwig zero: exact inverses and asymptotics.

Submodules:
    special: log-gamma, Beta and generalized binomial coefficients.
    symbols: the symbol ``|1 - chi|^(2 alpha) f1``, its Fourier and
        predictor coefficients, spectral factorization.
    toeplitz: Levinson recursion, Gohberg-Semencul inverse, ``lambda_min``.
    asymptotics: limit kernel ``G_alpha`` and the bulk/edge/trace formulas.
    spectral: two estimators of the minimal-eigenvalue constant ``c_alpha``.
    bounds: closed-form intervals for ``c_alpha``.
    recursion: lift from exponent ``alpha`` to ``alpha + 1``.
    cli: batch command-line front end.
"""

from __future__ import annotations

from .asymptotics import inverse_entry_asymptotic, kernel_G, trace_asymptotic
from .bounds import c_alpha_bounds
from .errors import (
    BreakdownError,
    ConvergenceError,
    DomainError,
    ExclusionError,
    FactorizationError,
)
from .recursion import lift_first_column
from .spectral import c_alpha_kernel, c_alpha_toeplitz
from .symbols import SymbolSpec, TrigPoly
from .toeplitz import gs_inverse, inverse_first_column, inverse_trace, lambda_min

__version__ = "0.1.0"

__all__ = [
    "BreakdownError",
    "ConvergenceError",
    "DomainError",
    "ExclusionError",
    "FactorizationError",
    "SymbolSpec",
    "TrigPoly",
    "c_alpha_bounds",
    "c_alpha_kernel",
    "c_alpha_toeplitz",
    "gs_inverse",
    "inverse_entry_asymptotic",
    "inverse_first_column",
    "inverse_trace",
    "kernel_G",
    "lambda_min",
    "lift_first_column",
    "trace_asymptotic",
]
