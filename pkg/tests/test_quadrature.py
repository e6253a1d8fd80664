"""Tests for the adaptive integrator and the Matsubara summation."""

import math

import numpy as np
import pytest

from casimir_impedance.quadrature import (
    IntegralResult, NonConvergenceError, SumResult,
    integrate_interval, integrate_semiinf, matsubara_sum, tail_cutoff,
)


def test_exponential_integral_is_one():
    res = integrate_semiinf(lambda y: np.exp(-y), 0.0, 1e-10)
    assert res.value == pytest.approx(1.0, rel=1e-12)
    assert res.abs_error_estimate <= 1e-10 * abs(res.value) + 1e-15
    assert res.evaluations > 0


def test_closed_form_antiderivative_at_lower_two():
    # int_2^inf y e^-y dy = (1 + 2) e^-2
    res = integrate_semiinf(lambda y: y * np.exp(-y), 2.0, 1e-10)
    assert res.value == pytest.approx(3.0 * math.exp(-2.0), rel=1e-12)


def test_bose_cubic_moment():
    # int_0^inf y^3/(e^y - 1) dy = pi^4/15
    res = integrate_semiinf(lambda y: y ** 3 / np.expm1(y), 1e-300, 1e-10)
    assert res.value == pytest.approx(math.pi ** 4 / 15.0, rel=1e-9)


def _random_decaying_integrands(n):
    rng = np.random.default_rng(20240917)
    cases = []
    for _ in range(n):
        c = rng.uniform(-2.0, 2.0, size=3)
        omega = rng.uniform(0.3, 2.0)
        s = rng.uniform(1.0, 2.5)
        lower = rng.uniform(0.0, 1.0)

        def f(y, c=c, omega=omega, s=s):
            return (c[0] + c[1] * y + c[2] * np.sin(omega * y)) * np.exp(-s * y)

        cases.append((f, lower))
    return cases


_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def test_oracle_equivalence_against_dense_trapezoid():
    # 20 random smooth decaying integrands vs a fixed 1e6-point composite
    # trapezoid on the same truncated interval
    for f, lower in _random_decaying_integrands(20):
        upper = tail_cutoff(lower, 1e-8)
        res = integrate_semiinf(f, lower, 1e-8)
        grid = np.linspace(lower, upper, 1_000_001)
        oracle = _trapezoid(f(grid), grid)
        assert res.value == pytest.approx(oracle, rel=1e-6, abs=1e-12)


def test_halving_tolerance_never_increases_true_error():
    for f, lower in _random_decaying_integrands(6):
        upper = tail_cutoff(lower, 1e-12)
        reference = integrate_interval(f, lower, upper, 1e-12).value
        prev_err = None
        for tol in (1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5, 3.125e-5):
            err = abs(integrate_interval(f, lower, upper, tol).value
                      - reference)
            if prev_err is not None:
                assert err <= prev_err + 1e-15 * abs(reference)
            prev_err = err


def test_bit_identical_across_repeated_runs():
    def f(y):
        return y ** 2 * np.log1p(-0.9 * np.exp(-y))

    runs = [integrate_semiinf(f, 0.5, 1e-9) for _ in range(3)]
    assert runs[0].value == runs[1].value == runs[2].value
    assert runs[0].evaluations == runs[1].evaluations == runs[2].evaluations


def test_error_estimate_honest_on_smooth_cases():
    for f, lower in _random_decaying_integrands(10):
        upper = tail_cutoff(lower, 1e-12)
        reference = integrate_interval(f, lower, upper, 1e-12).value
        res = integrate_semiinf(f, lower, 1e-6)
        assert abs(res.value - reference) <= max(
            res.abs_error_estimate, 1e-6 * abs(reference)) + 1e-14


def test_nonconvergence_reports_best_estimate():
    def spiky(y):
        return 1.0 / np.sqrt(np.abs(y - math.pi) + 1e-14)

    with pytest.raises(NonConvergenceError) as excinfo:
        integrate_interval(spiky, 0.0, 40.0, 1e-10, max_panels=16)
    best = excinfo.value.result
    assert isinstance(best, IntegralResult)
    assert best.abs_error_estimate > 0.0


def test_rejects_bad_tolerance_and_bounds():
    with pytest.raises(ValueError):
        integrate_semiinf(lambda y: np.exp(-y), 0.0, 0.5)
    with pytest.raises(ValueError):
        integrate_semiinf(lambda y: np.exp(-y), -1.0, 1e-6)
    with pytest.raises(ValueError):
        integrate_interval(lambda y: np.exp(-y), 1.0, 1.0, 1e-6)


def test_half_weight_convention():
    res = matsubara_sum(lambda l: 1.0 if l == 0 else 0.0, 1e-6, 0)
    assert res.value == 0.5
    assert res.terms_used >= 1


def test_geometric_series():
    # 0.5 + sum_{l>=1} 2^-l = 1.5
    res = matsubara_sum(lambda l: 0.5 ** l, 1e-12, 0)
    assert res.value == pytest.approx(1.5, rel=1e-11)
    assert res.last_term_magnitude <= 1e-12 * 1.5 * 1.01


def test_sum_floor_is_respected():
    res = matsubara_sum(lambda l: 0.5 ** l, 1e-6, 80)
    assert res.terms_used >= 81


def test_sum_nonconvergence_budget():
    with pytest.raises(NonConvergenceError) as excinfo:
        matsubara_sum(lambda l: 1.0, 1e-6, 0, max_terms=500)
    assert isinstance(excinfo.value.result, SumResult)


def test_sum_deterministic():
    def term(l):
        return (1.0 + 0.3 * l) * math.exp(-0.21 * l)

    a = matsubara_sum(term, 1e-9, 10)
    b = matsubara_sum(term, 1e-9, 10)
    assert a.value == b.value and a.terms_used == b.terms_used
