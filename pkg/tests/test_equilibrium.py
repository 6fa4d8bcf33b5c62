from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strikemodel.equilibrium import (
    ConvergenceError,
    SingularSystemError,
    build_linear_system,
    fixed_point_iterate,
    gauss_solve,
    solve_equilibrium,
)
from strikemodel.model import InvalidParameterError, ModelParameters, State, random_parameters, rhs

# Triangular system for the coupled example, solved by hand in exact arithmetic:
#   u_f = 10/0.37, u_s = (5 + 0.1 u_f)/0.3, u_p = (2 + 0.05 u_f + 0.08 u_s)/0.27
U_F = Fraction(1000, 37)
U_S = (5 + Fraction(1, 10) * U_F) / Fraction(3, 10)
U_P = (2 + Fraction(5, 100) * U_F + Fraction(8, 100) * U_S) / Fraction(27, 100)
COUPLED_EQUILIBRIUM = (float(U_F), float(U_S), float(U_P))


def test_frozen_values():
    assert U_S == Fraction(950, 37)
    assert U_P == Fraction(20000, 999)


def test_linear_system_decoupled():
    A, b = build_linear_system(ModelParameters(lambda_cap_f=3, lambda_cap_s=2, lambda_cap_p=1, d=0.1))
    assert np.array_equal(A, np.diag([0.1, 0.1, 0.1]))
    assert np.array_equal(b, [3, 2, 1])


def test_linear_system_coupled(coupled_params):
    A, b = build_linear_system(coupled_params)
    expected = [[0.37, 0, 0], [-0.1, 0.30, 0], [-0.05, -0.08, 0.27]]
    assert A == pytest.approx(np.array(expected), abs=1e-15)
    assert np.array_equal(b, [10, 5, 2])


def test_linear_system_symmetric_exchange_row_sums():
    A, _ = build_linear_system(ModelParameters(alpha_fs=0.1, alpha_sf=0.1, d=1))
    assert A[0].sum() == pytest.approx(1.0)
    assert A[1].sum() == pytest.approx(1.0)


def test_gauss_solve_needs_pivoting():
    A = np.array([[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]])
    x = np.array([1.0, -2.0, 0.5])
    assert gauss_solve(A, A @ x) == pytest.approx(x, abs=1e-14)


def test_gauss_solve_singular():
    with pytest.raises(SingularSystemError):
        gauss_solve(np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]]), np.ones(3))


def test_gauss_solve_does_not_mutate():
    A = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]])
    b = np.ones(3)
    A0, b0 = A.copy(), b.copy()
    gauss_solve(A, b)
    assert np.array_equal(A, A0) and np.array_equal(b, b0)


def test_solve_decoupled():
    res = solve_equilibrium(ModelParameters(lambda_cap_f=10, lambda_cap_s=5, lambda_cap_p=2, d=0.1))
    assert res.unique
    assert res.state == pytest.approx((100, 50, 20), rel=1e-14)
    assert res.residual <= 1e-12


def test_solve_coupled_matches_hand_solution(coupled_params):
    res = solve_equilibrium(coupled_params)
    assert res.state == pytest.approx(COUPLED_EQUILIBRIUM, rel=1e-13)


def test_fixed_point_oracle_coupled(coupled_params):
    oracle = fixed_point_iterate(coupled_params, State(0, 0, 0), tol=1e-12, max_iter=10_000)
    assert oracle == pytest.approx(COUPLED_EQUILIBRIUM, abs=1e-8)
    assert np.abs(np.subtract(solve_equilibrium(coupled_params).state, oracle)).max() <= 1e-8


def test_fixed_point_decoupled_one_step():
    p = ModelParameters(lambda_cap_f=10, lambda_cap_s=5, lambda_cap_p=2, d=0.1,
                        lambda_f=0.4, lambda_s=0.15, lambda_p=0.3)
    # one substitution lands on the fixed point; the second only confirms it
    out = fixed_point_iterate(p, State(0, 0, 0), tol=1e-12, max_iter=2)
    assert out == (10 / 0.5, 5 / 0.25, 2 / 0.4)


def test_fixed_point_non_convergence(coupled_params):
    with pytest.raises(ConvergenceError):
        fixed_point_iterate(coupled_params, State(1e6, 1e6, 1e6), tol=1e-12, max_iter=1)


@pytest.mark.parametrize("kwargs", [dict(tol=0), dict(max_iter=0)])
def test_fixed_point_argument_checks(coupled_params, kwargs):
    with pytest.raises(ValueError):
        fixed_point_iterate(coupled_params, **kwargs)


def test_solve_rejects_zero_death():
    with pytest.raises(InvalidParameterError):
        solve_equilibrium(ModelParameters(lambda_cap_f=1))


def test_random_draws_agree_with_oracle(rng):
    for _ in range(200):
        p = random_parameters(rng)
        res = solve_equilibrium(p)
        oracle = fixed_point_iterate(p, tol=1e-12)
        assert np.abs(np.subtract(res.state, oracle)).max() <= 1e-8
        assert res.residual <= 1e-9 * (1 + max(p.lambda_cap_f, p.lambda_cap_s, p.lambda_cap_p))


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0, 1), min_size=12, max_size=12),
    st.floats(0.01, 1),
)
def test_equilibrium_nonnegative_fixed_point(rates, d):
    p = ModelParameters(*rates[:9], d, *rates[9:])
    res = solve_equilibrium(p)
    assert res.unique
    assert min(res.state) >= -1e-12
    assert max(abs(r) for r in rhs(p, res.state)) <= 1e-9 * (1 + max(rates[:3]))
