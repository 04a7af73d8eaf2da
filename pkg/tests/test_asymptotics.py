from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from fhtoeplitz.asymptotics import (
    AsymptoticEntry,
    edge_asymptotics,
    first_column_asymptotic,
    green_kernel,
    inverse_entry_asymptotic,
    kernel_F,
    kernel_G,
    kernel_h,
    predictor_at_one,
    trace_asymptotic,
    trace_constant,
    trace_constant_beta_exact,
    trace_constant_factorial,
)
from fhtoeplitz.errors import DomainError
from fhtoeplitz.symbols import SymbolSpec, TrigPoly, inverse_symbol_coeff_table
from fhtoeplitz.toeplitz import gs_inverse, inverse_first_column, inverse_trace, predictor_poly

F1_REAL = TrigPoly.from_nonneg([3.0, 1.0, 0.4])


def g_oracle(alpha: float, x: float, y: float) -> float:
    """Defining integral of G_alpha, integrated directly with QUADPACK."""
    m = max(x, y)
    a = alpha

    def f(t):
        return (t - x) ** (a - 1) * (t - y) ** (a - 1) * t ** (-2 * a)

    lo, hi = min(x, y), max(x, y)
    if lo == hi:
        val = quad(lambda t: t ** (-2 * a), m, 1, weight="alg", wvar=(2 * a - 2, 0), epsabs=0, epsrel=1e-13)[0]
    else:
        g = lambda t: (t - lo) ** (a - 1) * t ** (-2 * a)
        val = quad(g, m, 1, weight="alg", wvar=(a - 1, 0), epsabs=0, epsrel=1e-13, limit=200)[0]
    return x**a * y**a * val


def h_oracle(alpha: float, x: float, y: float) -> float:
    """h_alpha from its three defining integrals, in mpmath.

    The first integral is regularized by ``t = s^(1/a)``; the tail of the
    third is the hypergeometric closed form of ``int_1^inf``.
    """
    with mpmath.workdps(30):
        a = mpmath.mpf(alpha)
        m = mpmath.mpf(min(x, y))
        D = mpmath.mpf(abs(x - y))

        def f1(s):
            t = s ** (1 / a)
            return (D + t) ** (a - 1) * (((1 - t) * (1 - D - t)) ** a - 1) / a

        if D == 0:
            # binomial series of (1-t)^(2a) - 1 integrated term by term
            i1 = mpmath.nsum(
                lambda k: mpmath.binomial(2 * a, k) * (-1) ** k * m ** (2 * a - 1 + k) / (2 * a - 1 + k),
                [1, mpmath.inf],
            )
        else:
            cuts = [0, D**a, m**a] if D < m else [0, m**a]
            # s^(1/a) is steep for small a; panels keep tanh-sinh accurate
            panels = sorted(set(cuts) | set(mpmath.linspace(0, m**a, 20)))
            i1 = mpmath.quad(f1, panels)
        i2 = mpmath.quad(
            lambda t: t ** (a - 1) * (1 - t) ** a * (t - D) ** (a - 1) * (1 - t + D) ** a,
            [1 - m, 1],
        )
        i3 = mpmath.quad(lambda t: t ** (a - 1) * (D + t) ** (a - 1), [m, 1])
        i3 += mpmath.hyp2f1(1 - a, 1 - 2 * a, 2 - 2 * a, -D) / (1 - 2 * a)
        return float(i1 - i2 - i3)


# ------------------------------------------------------------------ G_alpha


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.75, 1.0, 1.5, 2.5, 4.0])
@pytest.mark.parametrize("xy", [(0.1, 0.2), (0.3, 0.7), (0.5, 0.51), (0.05, 0.95), (0.6, 0.4)])
def test_green_kernel_matches_quadrature(alpha, xy):
    x, y = xy
    assert kernel_G(alpha, x, y) == pytest.approx(g_oracle(alpha, x, y), rel=1e-9)


@pytest.mark.parametrize("alpha", [0.75, 1.5, 3.0])
def test_green_kernel_diagonal(alpha):
    for x in (0.2, 0.5, 0.9):
        R = x * (1 - x)
        assert kernel_G(alpha, x, x) == pytest.approx(R ** (2 * alpha - 1) / (2 * alpha - 1), rel=1e-13)
        assert kernel_G(alpha, x, x) == pytest.approx(g_oracle(alpha, x, x), rel=1e-9)


def test_alpha_one_closed_form_grid():
    x = (np.arange(50) + 0.5) / 50
    X, Y = np.meshgrid(x, x, indexing="ij")
    want = np.minimum(X, Y) * (1 - np.maximum(X, Y))
    np.testing.assert_allclose(kernel_G(1.0, X, Y), want, atol=1e-10, rtol=0)


def test_kernel_diagonal_divergence():
    with pytest.raises(DomainError):
        kernel_G(0.5, 0.3, 0.3)
    assert np.isinf(green_kernel(0.25, 0.3, 0.3))
    assert kernel_F(0.25, 0.0, 0.0) == 0.0
    with pytest.raises(DomainError):
        green_kernel(1.0, 1.2, 0.3)
    with pytest.raises(DomainError):
        kernel_F(0.0, 0.1, 0.1)


def test_kernel_boundary_vanishes():
    for alpha in (0.25, 1.5):
        assert kernel_G(alpha, 0.0, 0.4) == 0.0
        assert kernel_G(alpha, 1.0, 0.4) == 0.0


# ------------------------------------------------------------------ entries


def test_inverse_entry_alpha_one():
    # N G_1(x, y) against the exact tridiagonal inverse
    N = 1000
    exact = gs_inverse(SymbolSpec(1.0), N).entry(300, 600)
    asym = inverse_entry_asymptotic(1.0, 0.3, 0.6, N)
    assert asym == pytest.approx(N * 0.3 * 0.4)
    assert exact == pytest.approx(301 * 401 / 1002, rel=1e-12)
    # first-order correction: relative gap ~ (1/x + 1/(1-y)) / N
    assert abs(exact - asym) / exact < 2 * (1 / 0.3 + 1 / 0.4) / N


def test_inverse_entry_with_f1_scales_by_f1_at_one():
    spec = SymbolSpec(1.5, F1_REAL)
    a = inverse_entry_asymptotic(1.5, 0.3, 0.6, 512, spec)
    b = inverse_entry_asymptotic(1.5, 0.3, 0.6, 512)
    assert a == pytest.approx(b / F1_REAL.value_at_one())


@pytest.mark.parametrize("spec", [SymbolSpec(1.0), SymbolSpec(1.5, F1_REAL)], ids=["1", "f1"])
def test_first_column_bulk(spec):
    errs = []
    for N in (256, 1024):
        col = inverse_first_column(spec, N)
        errs.append(
            max(
                abs(col[int(N * x)] / first_column_asymptotic(spec.alpha, x, N, spec) - 1)
                for x in (0.25, 0.5, 0.75)
            )
        )
    assert errs[1] < errs[0]
    assert errs[1] < 0.01


def test_first_column_below_half():
    spec = SymbolSpec(0.25)
    col = inverse_first_column(spec, 2048)
    assert col[1024] / first_column_asymptotic(0.25, 0.5, 2048) == pytest.approx(1, abs=0.01)


@pytest.mark.parametrize("spec", [SymbolSpec(0.25), SymbolSpec(0.25, F1_REAL)], ids=["1", "f1"])
def test_edge_asymptotics_converge(spec):
    errs = []
    for N in (1024, 4096):
        col = inverse_first_column(spec, N)
        top, bottom = edge_asymptotics(0.25, 3, N, spec)
        errs.append((abs(col[3] / top - 1), abs(col[N - 3] / bottom - 1)))
    assert errs[1][0] < errs[0][0] < 1e-5
    assert errs[1][1] < errs[0][1] < 5e-3


@pytest.mark.parametrize("alpha", [0.75, 1.0])
def test_predictor_at_one(alpha):
    prev = None
    for N in (256, 1024):
        P = predictor_poly(SymbolSpec(alpha, F1_REAL), N + 1)
        p1, dp1 = P.at_one()
        fp, fdp = predictor_at_one(alpha, N, SymbolSpec(alpha, F1_REAL))
        err = max(abs(p1.real / fp - 1), abs(dp1.real / fdp - 1))
        assert prev is None or err < prev
        prev = err
    assert prev < 0.01


def test_predictor_at_one_negative_alpha_sign():
    p, dp = predictor_at_one(-0.25, 512)
    P = predictor_poly(SymbolSpec(-0.25), 513)
    p1, dp1 = P.at_one()
    assert np.sign(dp) == np.sign(dp1.real)
    assert p == pytest.approx(p1.real, rel=0.05)


# ------------------------------------------------------------------ trace


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_trace_forms_agree_exactly(n):
    assert trace_constant_beta_exact(n) == trace_constant_factorial(n)
    assert trace_constant(n) == pytest.approx(float(trace_constant_factorial(n)), rel=1e-13)


def test_trace_constants_known():
    assert trace_constant_factorial(1) == Fraction(1, 6)
    assert trace_constant_factorial(2) == Fraction(1, 420)
    with pytest.raises(DomainError):
        trace_constant(0.5)


def test_trace_asymptotic_with_f1():
    spec = SymbolSpec(1.5, F1_REAL)
    errs = [abs(inverse_trace(spec, N) / trace_asymptotic(1.5, N, spec) - 1) for N in (250, 1000)]
    assert errs[1] < errs[0] < 0.05


def test_asymptotic_entry_orders():
    e = AsymptoticEntry.of("inverse", 1.5, 3.0)
    assert e.order == 2.0 and e.formula_id == "inverse"
    assert AsymptoticEntry.of("predictor", 1.5, 1.0).order == 0.5
    assert AsymptoticEntry.of("trace", 1.5, 1.0).order == 3.0


# ------------------------------------------------------------------ h_alpha


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4])
@pytest.mark.parametrize("xy", [(0.3, 0.6), (0.6, 0.3), (0.2, 0.25), (0.5, 0.5), (0.1, 0.9)])
def test_kernel_h_matches_mpmath(alpha, xy):
    assert kernel_h(alpha, *xy) == pytest.approx(h_oracle(alpha, *xy), rel=1e-8, abs=1e-10)


def test_kernel_h_symmetric():
    assert kernel_h(0.25, 0.3, 0.6) == pytest.approx(kernel_h(0.25, 0.6, 0.3), rel=1e-12)


def _h_residual(alpha, x, y, N, double_count=False):
    spec = SymbolSpec(alpha)
    k, l = int(N * x), int(N * y)
    e = gs_inverse(spec, N).entry(k, l)
    ic = inverse_symbol_coeff_table(spec, abs(l - k))[abs(l - k)]
    val = (e - ic) * N ** (1 - 2 * alpha) * math.gamma(alpha) ** 2
    h = kernel_h(alpha, x, y, double_count=double_count)
    return abs(val - h) / abs(h)


def test_kernel_h_describes_second_order_term():
    errs = [_h_residual(0.25, 0.3, 0.6, N) for N in (512, 1024, 2048, 4096)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 2e-4


def test_kernel_h_double_count_variant_saturates():
    # the double-counting variant stalls at a fixed relative offset
    errs = [_h_residual(0.25, 0.3, 0.6, N, double_count=True) for N in (1024, 4096)]
    assert min(errs) > 1e-3
    assert errs[1] > 0.5 * errs[0]


def test_kernel_h_domain():
    with pytest.raises(DomainError):
        kernel_h(0.5, 0.3, 0.6)
    with pytest.raises(DomainError):
        kernel_h(0.25, 0.0, 0.6)
