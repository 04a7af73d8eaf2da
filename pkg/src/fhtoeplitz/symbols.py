"""Symbols |1 - chi|^(2 alpha) f1 and their coefficient sequences.

``f1`` is a strictly positive trigonometric polynomial. Its spectral factor
``g1`` (outer, ``g1(0) > 0``) gives the coefficients ``beta_u`` of ``1/g`` with
``g = (1 - chi)^alpha g1``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.special import binom

from .errors import DomainError, FactorizationError
from .special import gen_binom_neg_table, log_gamma, log_gamma_signed

__all__ = [
    "TrigPoly",
    "SymbolSpec",
    "CoeffTable",
    "phi_fourier_coeff",
    "phi_coeff_table",
    "inverse_symbol_coeff_table",
    "beta_coeffs",
    "spectral_factor",
]

_POSITIVITY_GRID = 4096


@dataclass(frozen=True)
class TrigPoly:
    """Real-valued trigonometric polynomial ``sum_n c[n] e^{i n theta}``.

    Attributes:
        coeffs: Mapping from index ``n`` in ``[-d, d]`` to ``c[n]``. Missing
            negative indices are filled in by Hermitian symmetry.
    """

    coeffs: Mapping[int, complex] = field(default_factory=lambda: {0: 1.0})

    def __post_init__(self):
        full: dict[int, complex] = {}
        for n, c in dict(self.coeffs).items():
            full[int(n)] = complex(c)
        for n in list(full):
            m = -n
            if m not in full:
                full[m] = full[n].conjugate()
            elif abs(full[m] - full[n].conjugate()) > 1e-12 * (1 + abs(full[n])):
                raise DomainError(
                    f"f1 is not Hermitian: c[{m}] != conj(c[{n}])"
                )
        if 0 in full and abs(full[0].imag) > 1e-12:
            raise DomainError("f1 is not Hermitian: c[0] must be real")
        object.__setattr__(self, "coeffs", dict(sorted(full.items())))

    @classmethod
    def constant(cls, value: float = 1.0) -> "TrigPoly":
        return cls({0: value})

    @classmethod
    def from_nonneg(cls, values) -> "TrigPoly":
        """Build from ``[c0, c1, ..., cd]``; negative indices by symmetry."""
        return cls({n: v for n, v in enumerate(values)})

    @property
    def degree(self) -> int:
        nz = [abs(n) for n, c in self.coeffs.items() if c != 0]
        return max(nz, default=0)

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self.coeffs.values())

    def coefficient(self, n: int) -> complex:
        return self.coeffs.get(int(n), 0.0)

    def dense(self) -> np.ndarray:
        """Coefficients as an array indexed ``-d..d``."""
        d = self.degree
        dtype = float if self.is_real else complex
        out = np.array([self.coefficient(n) for n in range(-d, d + 1)])
        return out.real.astype(dtype) if self.is_real else out

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        val = np.zeros(theta.shape, dtype=complex)
        for n, c in self.coeffs.items():
            val = val + c * np.exp(1j * n * theta)
        return val.real

    def value_at_one(self) -> float:
        return float(sum(self.coeffs.values()).real)

    def weight(self, nu: float = 1.5) -> float:
        """``sum |n|^nu |c[n]|``; finite for every polynomial."""
        return float(sum(abs(n) ** nu * abs(c) for n, c in self.coeffs.items()))

    def min_on_circle(self, points: int = _POSITIVITY_GRID) -> float:
        theta = 2 * np.pi * np.arange(points) / points
        return float(np.min(self(theta)))

    def is_positive(self) -> bool:
        """Strict positivity on a dense grid, relative to the sup norm."""
        theta = 2 * np.pi * np.arange(_POSITIVITY_GRID) / _POSITIVITY_GRID
        vals = self(theta)
        return bool(vals.min() > 1e-12 * np.abs(vals).max())


@dataclass(frozen=True)
class SymbolSpec:
    """The symbol ``phi_alpha = |1 - chi|^(2 alpha) f1``.

    Attributes:
        alpha: Singularity exponent, ``alpha > -1/2``.
        f1: Strictly positive regular part (default the constant 1).
    """

    alpha: float
    f1: TrigPoly = field(default_factory=TrigPoly.constant)

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha <= -0.5:
            raise DomainError("alpha must be a finite real > -1/2")
        if not self.f1.is_positive():
            raise FactorizationError("f1 must be strictly positive on the circle")

    @property
    def is_real(self) -> bool:
        return self.f1.is_real

    @property
    def f1_at_one(self) -> float:
        return self.f1.value_at_one()

    def g1_at_one(self) -> float:
        """``g1(1)``, real and positive for the outer normalization."""
        return math.sqrt(self.f1_at_one)

    def with_alpha(self, alpha: float) -> "SymbolSpec":
        return SymbolSpec(alpha, self.f1)


@dataclass(frozen=True)
class CoeffTable:
    """Indexed coefficient sequence.

    Attributes:
        values: Entries for indices ``0..len-1``.
        kind: One of ``phi_hat``, ``beta_alpha``, ``g1_coeffs``.
    """

    values: np.ndarray
    kind: str

    KINDS = ("phi_hat", "beta_alpha", "g1_coeffs")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown table kind {self.kind!r}")
        vals = np.asarray(self.values)
        if not np.all(np.isfinite(vals)):
            raise DomainError("coefficient table has non-finite entries")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def rows(self) -> list[tuple]:
        out = []
        for i, v in enumerate(self.values):
            v = complex(v)
            out.append((i, v.real) if v.imag == 0 else (i, v.real, v.imag))
        return out

    def to_json(self) -> str:
        vals = np.asarray(self.values)
        if np.iscomplexobj(vals):
            payload = [[float(v.real), float(v.imag)] for v in vals]
        else:
            payload = [float(v) for v in vals]
        return json.dumps({"kind": self.kind, "values": payload})

    @classmethod
    def from_json(cls, text: str) -> "CoeffTable":
        obj = json.loads(text)
        vals = obj["values"]
        if vals and isinstance(vals[0], list):
            arr = np.array([complex(a, b) for a, b in vals])
        else:
            arr = np.array(vals, dtype=float)
        return cls(arr, obj["kind"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        complex_vals = np.iscomplexobj(self.values)
        w.writerow(["index", "value", "imag"] if complex_vals else ["index", "value"])
        for i, v in enumerate(self.values):
            if complex_vals:
                w.writerow([i, repr(float(v.real)), repr(float(v.imag))])
            else:
                w.writerow([i, repr(float(v))])
        return buf.getvalue()


def _base_coeff(alpha: float, n: int) -> float:
    """Fourier coefficient of ``|1 - chi|^(2 alpha)`` at lag ``n``."""
    n = abs(int(n))
    if alpha == 0:
        return 1.0 if n == 0 else 0.0
    a = alpha - n + 1.0
    if a <= 0 and a == math.floor(a):
        # 1/Gamma at a pole vanishes
        return 0.0
    num = float(log_gamma(2 * alpha + 1))
    lg1 = float(log_gamma(alpha + n + 1))
    lg2, s2 = log_gamma_signed(a)
    sign = (-1.0) ** n * s2
    return sign * math.exp(num - lg1 - lg2)


def _base_table(alpha: float, upto: int, dtype=np.longdouble) -> np.ndarray:
    """Lags ``0..upto`` of ``|1 - chi|^(2 alpha)`` by the ratio recurrence."""
    out = np.empty(upto + 1, dtype=dtype)
    a = np.asarray(alpha, dtype=dtype)
    if alpha < 80:
        # binom(2a, a) is exact at integers, unlike the log-gamma route
        out[0] = float(binom(2 * alpha, alpha))
    else:
        lead = float(log_gamma(2 * alpha + 1)) - 2 * float(log_gamma(alpha + 1))
        out[0] = np.exp(np.asarray(lead, dtype=dtype))
    for j in range(upto):
        out[j + 1] = out[j] * (j - a) / (j + 1 + a)
    return out


def _convolve_with_f1(base: np.ndarray, f1: TrigPoly, lo: int, hi: int) -> np.ndarray:
    """Lags ``lo..hi`` of ``base * f1`` where ``base`` is even, given on ``0..``."""
    d = f1.degree
    dtype = base.dtype if f1.is_real else np.result_type(base.dtype, np.clongdouble)
    out = np.zeros(hi - lo + 1, dtype=dtype)
    lags = np.arange(lo, hi + 1)
    for j in range(-d, d + 1):
        c = f1.coefficient(j)
        if c == 0:
            continue
        cj = c.real if f1.is_real else c
        out += cj * base[np.abs(lags - j)]
    return out


def phi_fourier_coeff(spec: SymbolSpec, n: int) -> complex | float:
    """Fourier coefficient of ``phi_alpha`` at lag ``n``.

    For ``f1 = 1`` this is ``(-1)^n Gamma(2a+1)/(Gamma(a+n+1)Gamma(a-n+1))``
    evaluated in log space with reflection. A general ``f1`` contributes a
    finite convolution, so no truncation is involved.
    """
    n = int(n)
    total = 0.0
    for j, c in spec.f1.coeffs.items():
        if c != 0:
            total = total + c * _base_coeff(spec.alpha, n - j)
    if isinstance(total, complex) and spec.is_real:
        return float(total.real)
    return total


def phi_coeff_table(spec: SymbolSpec, upto: int, dtype=np.longdouble) -> np.ndarray:
    """Lags ``0..upto`` of ``phi_alpha`` in extended precision.

    The recurrence ``c[n+1]/c[n] = (n - alpha)/(n + alpha + 1)`` is exact, so
    building the table this way keeps the relative error at a few ulps, which
    matters once the Toeplitz matrix is badly conditioned.
    """
    base = _base_table(spec.alpha, upto + spec.f1.degree, dtype)
    if spec.f1.degree == 0 and spec.f1.coefficient(0) == 1:
        return base[: upto + 1]
    return _convolve_with_f1(base, spec.f1, 0, upto)


def inverse_symbol_coeff_table(spec: SymbolSpec, upto: int) -> np.ndarray:
    """Lags ``0..upto`` of ``1/phi_alpha`` (requires ``alpha < 1/2``).

    ``1/|1 - chi|^(2 alpha)`` has the same closed form with ``-alpha``. For a
    general ``f1`` the series of ``1/f1`` is obtained on a fine grid.
    """
    if not -0.5 < spec.alpha < 0.5:
        raise DomainError("1/phi_alpha is integrable only for |alpha| < 1/2")
    d = spec.f1.degree
    if d == 0:
        return np.asarray(
            _base_table(-spec.alpha, upto, np.longdouble) / spec.f1.value_at_one(),
            dtype=float,
        )
    m = max(1 << 12, 16 * (upto + d + 1))
    theta = 2 * np.pi * np.arange(m) / m
    inv = np.fft.fft(1.0 / spec.f1(theta)) / m
    mag = np.abs(inv[: m // 2])
    # 1/f1 has geometrically decaying coefficients; drop those below rounding
    width = int(np.nonzero(mag > 1e-17 * mag[0])[0].max()) + 1
    inv_f1 = TrigPoly({n: inv[n].real if spec.is_real else inv[n] for n in range(width)})
    base = _base_table(-spec.alpha, upto + width, np.longdouble)
    return np.asarray(_convolve_with_f1(base, inv_f1, 0, upto), dtype=float if spec.is_real else complex)


def spectral_factor(f1: TrigPoly, upto: int) -> CoeffTable:
    """Outer factor ``g1`` of ``f1 = g1 conj(g1)`` by the cepstral method.

    ``log f1`` is sampled on a grid of at least ``16 (upto + 1)`` points, its
    analytic half is exponentiated and the power-series coefficients of
    ``g1`` are read off by FFT.

    Args:
        f1: Strictly positive trigonometric polynomial.
        upto: Highest coefficient index returned.

    Returns:
        Table of kind ``g1_coeffs`` with ``upto + 1`` entries and ``g1(0) > 0``.

    Raises:
        FactorizationError: If ``f1`` is not strictly positive.
    """
    if not f1.is_positive():
        raise FactorizationError("f1 must be strictly positive on the circle")
    d = f1.degree
    if d == 0:
        vals = np.zeros(upto + 1)
        vals[0] = math.sqrt(f1.value_at_one())
        return CoeffTable(vals, "g1_coeffs")
    m = 1 << max(12, int(math.ceil(math.log2(16 * (max(upto, d) + 1)))))
    theta = 2 * np.pi * np.arange(m) / m
    cep = np.fft.fft(np.log(f1(theta))) / m
    half = np.zeros(m, dtype=complex)
    half[0] = cep[0] / 2
    half[1 : m // 2] = cep[1 : m // 2]
    g_grid = np.exp(np.fft.ifft(half) * m)
    coeffs = np.fft.fft(g_grid) / m
    out = np.zeros(upto + 1, dtype=complex)
    # g1 is a polynomial of degree d; everything above is aliasing noise
    k = min(upto, d)
    out[: k + 1] = coeffs[: k + 1]
    if f1.is_real:
        out = out.real
    return CoeffTable(out, "g1_coeffs")


def _reciprocal_series(g: np.ndarray, upto: int) -> np.ndarray:
    """Power-series coefficients of ``1/g`` for a polynomial ``g``."""
    dtype = np.clongdouble if np.iscomplexobj(g) else np.longdouble
    g = np.asarray(g, dtype=dtype)
    h = np.zeros(upto + 1, dtype=dtype)
    h[0] = 1 / g[0]
    d = len(g) - 1
    for n in range(1, upto + 1):
        j = np.arange(1, min(n, d) + 1)
        h[n] = -np.sum(g[j] * h[n - j]) / g[0]
    return h


def beta_coeffs(spec: SymbolSpec, upto: int) -> CoeffTable:
    """Taylor coefficients ``beta_u`` of ``1/g`` with ``g = (1 - chi)^alpha g1``.

    Raises:
        FactorizationError: If ``g1`` vanishes on the closed unit disk.
    """
    d = spec.f1.degree
    g1 = spectral_factor(spec.f1, d).values
    if d > 0:
        roots = np.roots(np.asarray(g1)[::-1])
        if np.any(np.abs(roots) <= 1 + 1e-12):
            raise FactorizationError("g1 has a zero in the closed unit disk")
    series = gen_binom_neg_table(spec.alpha, upto, np.longdouble)
    if d == 0:
        vals = series / np.longdouble(g1[0])
    else:
        vals = np.convolve(series, _reciprocal_series(g1, upto))[: upto + 1]
    out = np.asarray(vals, dtype=float if spec.is_real else complex)
    return CoeffTable(out, "beta_alpha")
