"""Forward integration of the model and the closed-form solution of the
movement-restricted single-compartment case ``dU/dt = L - d U``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (
    PARAM_NAMES,
    ModelParameters,
    SimulationConfig,
    State,
    check_parameters,
    rates,
)


class NonFiniteStateError(ArithmeticError):
    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution: ``times[k]`` and ``states[k] = (u_f, u_s, u_p)``."""

    times: np.ndarray
    states: np.ndarray
    params: ModelParameters
    config: SimulationConfig

    def __len__(self) -> int:
        return len(self.times)

    @property
    def samples(self) -> list[tuple[float, State]]:
        return [(float(t), State.from_array(y)) for t, y in zip(self.times, self.states)]

    @property
    def final_state(self) -> State:
        return State.from_array(self.states[-1])

    def state_at(self, k: int) -> State:
        return State.from_array(self.states[k])


@dataclass(frozen=True)
class RestrictedSolution:
    """``U(t) = L/d + (U_i - L/d) exp(-d t)`` for one isolated compartment."""

    lambda_cap: float
    d: float
    u_initial: float

    @property
    def asymptote(self) -> float:
        return asymptote(self)


def _rk4(p, y, dt):
    # y is a 3-sequence of floats or equally shaped arrays
    k1 = rates(p, *y)
    k2 = rates(p, *(yi + 0.5 * dt * ki for yi, ki in zip(y, k1)))
    k3 = rates(p, *(yi + 0.5 * dt * ki for yi, ki in zip(y, k2)))
    k4 = rates(p, *(yi + dt * ki for yi, ki in zip(y, k3)))
    return tuple(
        yi + dt / 6.0 * (a + 2.0 * b + 2.0 * c + e)
        for yi, a, b, c, e in zip(y, k1, k2, k3, k4)
    )


def step_rk4(params: ModelParameters, state, dt: float) -> State:
    """One classical fourth-order Runge-Kutta step of length *dt*."""
    if not dt > 0:
        raise ValueError("dt must be > 0")
    check_parameters(params, positive_death=False)
    out = State(*map(float, _rk4(params.as_tuple(), tuple(map(float, state)), dt)))
    if not all(math.isfinite(x) for x in out):
        raise NonFiniteStateError(f"non-finite state {out} after step dt={dt!r}")
    return out


def time_grid(t_end: float, dt: float) -> np.ndarray:
    """``0, dt, 2 dt, ...`` with the last step shortened to end on *t_end*."""
    n = math.ceil(t_end / dt - 1e-9)
    if n <= 0:
        return np.array([0.0])
    t = np.arange(n + 1, dtype=float) * dt
    t[-1] = t_end
    return t


def _check_config(config: SimulationConfig) -> None:
    msg = config.validate()
    if msg is not None:
        raise ValueError(msg)


def simulate(params: ModelParameters, config: SimulationConfig) -> Trajectory:
    """Integrate from ``t = 0`` to ``config.t_end`` with fixed-step RK4,
    recording every step."""
    check_parameters(params, positive_death=False)
    _check_config(config)
    p = params.as_tuple()
    times = time_grid(config.t_end, config.dt)
    states = np.empty((len(times), 3))
    y = tuple(config.initial_state)
    states[0] = y
    for k in range(1, len(times)):
        y = _rk4(p, y, times[k] - times[k - 1])
        if not (math.isfinite(y[0]) and math.isfinite(y[1]) and math.isfinite(y[2])):
            raise NonFiniteStateError(f"non-finite state at t={times[k]!r}", t=float(times[k]))
        states[k] = y
    return Trajectory(times=times, states=states, params=params, config=config)


def _affine_form(table: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # table: (B, 13) in PARAM_NAMES order -> J (B, 3, 3), b (B, 3)
    L_f, L_s, L_p, a_sf, a_pf, a_fs, a_fp, a_ps, a_sp, d, g_f, g_s, g_p = table.T
    J = np.empty((len(table), 3, 3))
    J[:, 0] = np.stack([-(d + a_fs + a_fp + g_f), a_sf, a_pf], axis=-1)
    J[:, 1] = np.stack([a_fs, -(d + a_sf + a_sp + g_s), a_ps], axis=-1)
    J[:, 2] = np.stack([a_fp, a_sp, -(d + a_pf + a_ps + g_p)], axis=-1)
    return J, np.stack([L_f, L_s, L_p], axis=-1)


def rk4_affine_step(J: np.ndarray, b: np.ndarray, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """RK4 step for ``y' = J y + b`` written as ``y -> M y + c``.

    ``M = I + hJ + (hJ)^2/2 + (hJ)^3/6 + (hJ)^4/24`` and
    ``c = h (I + hJ/2 + (hJ)^2/6 + (hJ)^3/24) b``. Works on stacks of
    matrices.
    """
    A = dt * J
    eye = np.broadcast_to(np.eye(J.shape[-1]), J.shape)
    A2 = A @ A
    A3 = A2 @ A
    M = eye + A + A2 / 2.0 + A3 / 6.0 + (A3 @ A) / 24.0
    P = eye + A / 2.0 + A2 / 6.0 + A3 / 24.0
    c = dt * (P @ b[..., None])[..., 0]
    return M, c


def simulate_final_batch(
    params: Sequence[ModelParameters],
    config: SimulationConfig,
) -> np.ndarray:
    """Final RK4 states of many parameter sets on the grid of :func:`simulate`.

    Each step is applied in its equivalent matrix form
    (:func:`rk4_affine_step`), so results agree with :func:`simulate` up to
    roundoff. Returns an array of shape ``(len(params), 3)``.
    """
    _check_config(config)
    for q in params:
        check_parameters(q, positive_death=False)
    table = np.array([q.as_tuple() for q in params], dtype=float).reshape(-1, len(PARAM_NAMES))
    J, b = _affine_form(table)
    y = [np.full(len(table), float(v)) for v in config.initial_state]
    times = time_grid(config.t_end, config.dt)
    # grid differences take only a handful of distinct values (roundoff)
    maps = {}
    for h in np.diff(times).tolist():
        if h not in maps:
            M, c = rk4_affine_step(J, b, h)
            maps[h] = ([[M[:, i, j].copy() for j in range(3)] for i in range(3)],
                       [c[:, i].copy() for i in range(3)])
        m, cs = maps[h]
        y = [m[i][0] * y[0] + m[i][1] * y[1] + m[i][2] * y[2] + cs[i] for i in range(3)]
    out = np.column_stack(y)
    if not np.all(np.isfinite(out)):
        raise NonFiniteStateError(f"non-finite state at t={times[-1]!r}", t=float(times[-1]))
    return out


def asymptote(sol: RestrictedSolution) -> float:
    """Long-run population ``L/d`` of the restricted compartment."""
    if sol.d == 0:
        raise ZeroDivisionError("asymptote undefined for d = 0")
    if not sol.d > 0:
        raise ValueError("d must be > 0")
    return sol.lambda_cap / sol.d


def restricted_analytic(sol: RestrictedSolution, t):
    """Evaluate the closed-form restricted solution at time(s) *t*."""
    if not sol.d > 0:
        raise ValueError("d must be > 0")
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be >= 0")
    limit = sol.lambda_cap / sol.d
    if np.ndim(t) == 0:
        return limit + (sol.u_initial - limit) * math.exp(-sol.d * float(t))
    return limit + (sol.u_initial - limit) * np.exp(-sol.d * np.asarray(t, dtype=float))
