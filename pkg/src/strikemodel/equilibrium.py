"""Movement-free equilibrium of the three-compartment model.

Setting the right-hand side to zero gives, for each compartment, its
equilibrium population as (admissions + inbound movement) divided by the
total outflow rate. Rearranged, that is the linear system ``A u = L``::

    [ d+a_fs+a_fp+g_f   -a_sf             -a_pf           ] [u_f]   [L_f]
    [ -a_fs             d+a_sf+a_sp+g_s   -a_ps           ] [u_s] = [L_s]
    [ -a_fp             -a_sp             d+a_pf+a_ps+g_p ] [u_p]   [L_p]

``A`` is strictly column diagonally dominant whenever ``d > 0``, so it is
nonsingular and the Jacobi iteration used by :func:`fixed_point_iterate`
converges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParameters, State, check_parameters, rhs

SINGULAR_RTOL = 1e-12


class SingularSystemError(ArithmeticError):
    pass


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EquilibriumResult:
    """Outcome of :func:`solve_equilibrium`.

    ``state`` is ``None`` and ``residual`` is NaN when the system was
    singular (``unique`` false).
    """

    state: State | None
    residual: float
    unique: bool


def build_linear_system(params: ModelParameters) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A, b)`` with ``A @ u_star == b`` at the equilibrium."""
    p = check_parameters(params)
    A = np.array(
        [
            [p.d + p.alpha_fs + p.alpha_fp + p.lambda_f, -p.alpha_sf, -p.alpha_pf],
            [-p.alpha_fs, p.d + p.alpha_sf + p.alpha_sp + p.lambda_s, -p.alpha_ps],
            [-p.alpha_fp, -p.alpha_sp, p.d + p.alpha_pf + p.alpha_ps + p.lambda_p],
        ],
        dtype=float,
    )
    b = np.array([p.lambda_cap_f, p.lambda_cap_s, p.lambda_cap_p], dtype=float)
    return A, b


def gauss_solve(A, b, rtol: float = SINGULAR_RTOL) -> np.ndarray:
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Raises :class:`SingularSystemError` when a pivot is smaller than
    ``rtol`` times the largest entry of ``A``.
    """
    a = np.array(A, dtype=float)
    x = np.array(b, dtype=float)
    n = len(x)
    if a.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {a.shape}")
    scale = np.abs(a).max() if a.size else 0.0
    threshold = rtol * scale

    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) <= threshold or a[piv, k] == 0.0:
            raise SingularSystemError(f"pivot {k} is {a[piv, k]!r} (threshold {threshold!r})")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        for i in range(k + 1, n):
            m = a[i, k] / a[k, k]
            if m != 0.0:
                a[i, k:] -= m * a[k, k:]
                x[i] -= m * x[k]

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def solve_equilibrium(params: ModelParameters) -> EquilibriumResult:
    A, b = build_linear_system(params)
    try:
        x = gauss_solve(A, b)
    except SingularSystemError:
        return EquilibriumResult(state=None, residual=math.nan, unique=False)
    state = State.from_array(x)
    residual = max(abs(r) for r in rhs(params, state))
    return EquilibriumResult(state=state, residual=residual, unique=True)


def _substitute(p: ModelParameters, u_f: float, u_s: float, u_p: float) -> State:
    return State(
        (p.lambda_cap_f + p.alpha_sf * u_s + p.alpha_pf * u_p)
        / (p.d + p.alpha_fs + p.alpha_fp + p.lambda_f),
        (p.lambda_cap_s + p.alpha_fs * u_f + p.alpha_ps * u_p)
        / (p.d + p.alpha_sf + p.alpha_sp + p.lambda_s),
        (p.lambda_cap_p + p.alpha_fp * u_f + p.alpha_sp * u_s)
        / (p.d + p.alpha_pf + p.alpha_ps + p.lambda_p),
    )


def fixed_point_iterate(
    params: ModelParameters,
    init: State = State(0.0, 0.0, 0.0),
    tol: float = 1e-12,
    max_iter: int = 1_000_000,
) -> State:
    """Iterate the equilibrium equations as a map until the max-norm change
    between successive iterates is at most *tol*.

    Kept as an independent check on :func:`solve_equilibrium`; it is much
    slower when ``d`` is small relative to the movement rates.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    p = check_parameters(params)
    cur = State(*map(float, init))
    for _ in range(max_iter):
        nxt = _substitute(p, *cur)
        change = max(abs(a - b) for a, b in zip(nxt, cur))
        cur = nxt
        if change <= tol:
            return cur
    raise ConvergenceError(f"no convergence to tol={tol!r} within {max_iter} iterations")
