from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.linalg import eigh

from fhtoeplitz.asymptotics import green_kernel
from fhtoeplitz.errors import DomainError, ExclusionError
from fhtoeplitz.spectral import (
    CAlphaEstimate,
    KernelOperator,
    c_alpha_kernel,
    c_alpha_toeplitz,
    iterated_trace,
    nystrom,
    perron_vector,
    richardson,
    singular_part,
    spectral_radius,
)
from fhtoeplitz.symbols import SymbolSpec, TrigPoly


def test_zero_kernel_stub():
    op = nystrom(1.0, 16, kernel=lambda x, y: 0.0 * x * y)
    assert not op.kmat.any()
    assert spectral_radius(op) == 0.0


def test_constant_kernel_stub():
    op = nystrom(1.0, 16, kernel=lambda x, y: np.ones_like(x * y))
    assert spectral_radius(op) == pytest.approx(1.0, rel=1e-13)
    assert op.alpha is None


def test_operator_is_immutable():
    op = nystrom(1.0, 16)
    with pytest.raises(ValueError):
        op.kmat[0, 0] = 1.0
    assert op.weights.sum() == pytest.approx(1.0)
    assert op.m == 16


def test_alpha_one_spectral_radius():
    assert spectral_radius(nystrom(1.0, 256)) == pytest.approx(1 / math.pi**2, abs=1e-6)


def test_alpha_one_full_spectrum():
    # G_1 is the Dirichlet Green's function: eigenvalues 1/(k pi)^2
    want = 1 / (np.arange(1, 6) * math.pi) ** 2
    errs = []
    for m in (128, 256):
        lam = eigh(nystrom(1.0, m).symmetric(), eigvals_only=True)[::-1]
        errs.append(np.abs(lam[:5] / want - 1))
    assert np.all(errs[1] < 1e-6)
    # error shrinks at least eightfold per doubling
    assert np.all(errs[1] * 8 < errs[0])


@pytest.mark.parametrize("alpha", [0.25, 0.75, 1.5, 2.0, 2.5])
def test_kernel_matrix_symmetric_positive(alpha):
    op = nystrom(alpha, 64)
    np.testing.assert_allclose(op.kmat, op.kmat.T, rtol=1e-12)
    assert np.all(op.kmat > 0)


@pytest.mark.parametrize("alpha", [0.25, 0.75, 1.5, 2.0, 3.0])
def test_singular_part_captures_diagonal_behaviour(alpha):
    # G(x, x + d) - S(d) tends to R^(2a-1)/(2a-1) as d -> 0
    S, _ = singular_part(alpha)
    x = 0.4
    R = x * (1 - x)
    H = R ** (2 * alpha - 1) / (2 * alpha - 1)
    gaps = [abs(green_kernel(alpha, x, x + d) - S(d) - H) for d in (1e-3, 1e-4, 1e-5)]
    assert gaps[2] < gaps[1] < gaps[0]
    assert gaps[2] < 1e-3 * max(1.0, abs(H))


@pytest.mark.parametrize("alpha", [0.3, 1.5, 2.0])
def test_singular_part_integral(alpha):
    from scipy.integrate import quad

    S, int_S = singular_part(alpha)
    x = 0.3
    want = quad(lambda y: S(abs(x - y)), 0, 1, points=[x], limit=200)[0]
    assert int_S(x) == pytest.approx(want, rel=1e-8)


def test_nystrom_validation():
    with pytest.raises(ExclusionError):
        nystrom(0.5, 32)
    with pytest.raises(DomainError):
        nystrom(0.0, 32)
    with pytest.raises(DomainError):
        nystrom(1.0, 4)


@pytest.mark.parametrize("alpha", [0.25, 0.75, 1.5])
def test_nystrom_converges(alpha):
    rhos = [spectral_radius(nystrom(alpha, m)) for m in (32, 64, 128, 256)]
    diffs = np.abs(np.diff(rhos))
    assert diffs[-1] < diffs[0]
    assert diffs[-1] < 1e-5 * rhos[-1]


def test_perron_vector_positive():
    v = perron_vector(nystrom(1.5, 64))
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.all(v > 0)


def test_iterated_trace_alpha_one():
    assert iterated_trace(1.0, 1, 256) == pytest.approx(1 / 6, rel=1e-12)
    # sum 1/(k pi)^4 = 1/90
    assert iterated_trace(1.0, 2, 256) == pytest.approx(1 / 90, rel=2e-7)


def test_iterated_trace_root_tends_to_radius():
    alpha = 0.75
    rho = spectral_radius(nystrom(alpha, 128))
    roots = [math.exp(iterated_trace(alpha, s, 128, log=True) / s) for s in (2, 5, 20, 40)]
    assert all(r >= rho * (1 - 1e-12) for r in roots)
    assert all(b < a for a, b in zip(roots, roots[1:]))
    assert roots[-1] == pytest.approx(rho, rel=1e-6)


def test_iterated_trace_domain():
    with pytest.raises(DomainError):
        iterated_trace(0.25, 2, 64)
    with pytest.raises(DomainError):
        iterated_trace(1.0, 0, 64)


def test_richardson_removes_given_orders():
    hs = [1 / 8, 1 / 16, 1 / 32]
    vals = [3 + 2 * h - 5 * h**2 for h in hs]
    assert richardson(hs, vals, [1, 2]) == pytest.approx(3.0, abs=1e-13)
    assert richardson(hs[:2], vals[:2], [1]) == pytest.approx(3 + 5 * hs[0] * hs[1], abs=1e-13)


def test_c_alpha_estimate_roundtrip():
    est = c_alpha_kernel(1.0)
    back = CAlphaEstimate.from_dict(est.to_dict())
    assert back == est
    import json

    assert CAlphaEstimate.from_dict(json.loads(est.to_json())) == est
    # extrapolating beyond the last two raw values is reported
    last = [v for _, v in est.raw[-2:]]
    assert est.flagged == (not min(last) <= est.extrapolated <= max(last))
    assert est.method == "kernel"
    assert [r for r, _ in est.raw] == [64, 128, 256]


def test_c_alpha_both_routes_alpha_one():
    k = c_alpha_kernel(1.0)
    t = c_alpha_toeplitz(1.0)
    assert k.extrapolated == pytest.approx(math.pi**2, rel=1e-9)
    assert t.extrapolated == pytest.approx(math.pi**2, rel=1e-5)


def test_c_alpha_routes_agree_with_f1():
    # c_alpha does not depend on f1 once divided by f1(1)
    f1 = TrigPoly.from_nonneg([3.0, 1.0, 0.4])
    t = c_alpha_toeplitz(0.75, spec=SymbolSpec(0.75, f1))
    k = c_alpha_kernel(0.75)
    assert t.extrapolated == pytest.approx(k.extrapolated, rel=0.02)


def test_c_alpha_exclusions():
    with pytest.raises(ExclusionError):
        c_alpha_kernel(0.5)
    with pytest.raises(ExclusionError):
        c_alpha_toeplitz(0.5)
    with pytest.raises(DomainError):
        c_alpha_kernel(-1.0)


def test_kernel_operator_custom():
    x = np.array([0.25, 0.75])
    op = KernelOperator(x, np.array([0.5, 0.5]), np.eye(2), None)
    np.testing.assert_allclose(op.symmetric(), 0.5 * np.eye(2))
