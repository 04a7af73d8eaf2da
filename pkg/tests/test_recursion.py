from __future__ import annotations

import numpy as np
import pytest

from fhtoeplitz.errors import DomainError
from fhtoeplitz.recursion import LIFT_DENOMINATOR_OFFSET, lift_first_column, lift_symbol
from fhtoeplitz.symbols import SymbolSpec, TrigPoly
from fhtoeplitz.toeplitz import inverse_first_column, predictor_poly

F1_REAL = TrigPoly.from_nonneg([3.0, 1.0, 0.4])
F1_COMPLEX = TrigPoly.from_nonneg([2.5, 0.6 + 0.3j, 0.1 - 0.2j])


def test_offset_pinned():
    assert LIFT_DENOMINATOR_OFFSET == 2


@pytest.mark.parametrize("N", [1, 5, 64, 513])
def test_trivial_predictor_lifts_to_tridiagonal(N):
    res = lift_first_column(np.r_[1.0, np.zeros(N + 1)])
    want = (N + 1 - np.arange(N + 1)) / (N + 2)
    np.testing.assert_allclose(res.column, want, rtol=0, atol=1e-14)
    assert res.A_P == 0.0
    assert res.aux["P1"] == 1


@pytest.mark.parametrize("f1", [TrigPoly.constant(), F1_REAL, F1_COMPLEX], ids=["1", "real", "cplx"])
@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.75, 1.0])
@pytest.mark.parametrize("N", [16, 128])
def test_lift_matches_levinson(alpha, f1, N):
    spec = SymbolSpec(alpha, f1)
    got = lift_symbol(spec, N).column
    want = inverse_first_column(spec.with_alpha(alpha + 1), N)
    assert np.max(np.abs(got - want)) <= 1e-9 * np.max(np.abs(want))


def test_lift_accepts_predictor_object():
    P = predictor_poly(SymbolSpec(0.75), 33)
    a = lift_first_column(P).column
    b = lift_first_column(P.gamma).column
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("alpha", [0.25, 0.75, 1.5])
def test_A_P_growth(alpha):
    # -2 P'(1)/P(1) ~ -2 alpha N / (2 alpha + 1)
    ratios = [lift_symbol(SymbolSpec(alpha), N).A_P / N for N in (256, 2048)]
    want = -2 * alpha / (2 * alpha + 1)
    assert abs(ratios[1] - want) < abs(ratios[0] - want)
    assert ratios[1] == pytest.approx(want, rel=0.02)


def test_lift_validation():
    with pytest.raises(DomainError):
        lift_first_column(np.array([1.0]))
    with pytest.raises(DomainError):
        lift_first_column(np.array([-1.0, 0.5]))
    with pytest.raises(DomainError):
        lift_first_column(np.array([1.0, -1.0]))
