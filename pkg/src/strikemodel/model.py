"""Three-compartment model of student movement between Federal, State and
Private universities.

Compartments are indexed ``f`` (federal), ``s`` (state) and ``p`` (private).
Rates are per unit of time; the bundled demos use years. Populations are
real-valued.

    dU_f/dt = L_f + a_sf U_s + a_pf U_p - d U_f - a_fs U_f - a_fp U_f - g_f U_f
    dU_s/dt = L_s + a_ps U_p + a_fs U_f - d U_s - a_sf U_s - a_sp U_s - g_s U_s
    dU_p/dt = L_p + a_sp U_s + a_fp U_f - d U_p - a_ps U_p - a_pf U_p - g_p U_p

with admissions ``L``, directed movement ``a_xy`` (from x to y), natural
death ``d`` and graduation ``g``.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields
from typing import NamedTuple

import numpy as np

PARAM_NAMES: tuple[str, ...] = (
    "lambda_cap_f",
    "lambda_cap_s",
    "lambda_cap_p",
    "alpha_sf",
    "alpha_pf",
    "alpha_fs",
    "alpha_fp",
    "alpha_ps",
    "alpha_sp",
    "d",
    "lambda_f",
    "lambda_s",
    "lambda_p",
)

ADMISSION_NAMES = PARAM_NAMES[:3]
MOVEMENT_NAMES = PARAM_NAMES[3:9]
GRADUATION_NAMES = PARAM_NAMES[10:]


class InvalidParameterError(ValueError):
    """Raised when a parameter set violates the model invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class ModelParameters:
    """The 13 rate constants of the model.

    Construction does not validate; use :func:`validate` or
    :func:`check_parameters`. Every operation that consumes parameters
    checks them first.
    """

    lambda_cap_f: float = 0.0
    lambda_cap_s: float = 0.0
    lambda_cap_p: float = 0.0
    alpha_sf: float = 0.0
    alpha_pf: float = 0.0
    alpha_fs: float = 0.0
    alpha_fp: float = 0.0
    alpha_ps: float = 0.0
    alpha_sp: float = 0.0
    d: float = 0.0
    lambda_f: float = 0.0
    lambda_s: float = 0.0
    lambda_p: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def uniform(cls, value: float) -> "ModelParameters":
        return cls(*([value] * len(PARAM_NAMES)))


class State(NamedTuple):
    """Student populations ``(u_f, u_s, u_p)`` at one instant."""

    u_f: float
    u_s: float
    u_p: float

    @property
    def total(self) -> float:
        return self.u_f + self.u_s + self.u_p

    @classmethod
    def from_array(cls, arr) -> "State":
        a = np.asarray(arr, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))


ZERO_STATE = State(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class SimulationConfig:
    """Integration settings. ``initial_state`` defaults to ``(N, 0, 0)``."""

    eligible_population: float = 0.0
    t_end: float = 100.0
    dt: float = 0.01
    initial_state: State | None = None

    def __post_init__(self):
        if self.initial_state is None:
            object.__setattr__(
                self, "initial_state", State(float(self.eligible_population), 0.0, 0.0)
            )
        else:
            object.__setattr__(self, "initial_state", State(*map(float, self.initial_state)))

    def validate(self) -> str | None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            return f"dt must be finite and > 0, got {self.dt!r}"
        if not (math.isfinite(self.t_end) and self.t_end >= 0):
            return f"t_end must be finite and >= 0, got {self.t_end!r}"
        if not (math.isfinite(self.eligible_population) and self.eligible_population >= 0):
            return f"eligible_population must be finite and >= 0, got {self.eligible_population!r}"
        for name, value in zip(State._fields, self.initial_state):
            if not (math.isfinite(value) and value >= 0):
                return f"initial_state.{name} must be finite and >= 0, got {value!r}"
        return None


def _violation(params: ModelParameters, positive_death: bool = True) -> tuple[str, str] | None:
    for name in PARAM_NAMES:
        value = getattr(params, name)
        try:
            value = float(value)
        except (TypeError, ValueError):
            return name, f"{name} must be a real number, got {value!r}"
        if not math.isfinite(value):
            return name, f"{name} must be finite, got {value!r}"
        if value < 0:
            return name, f"{name} must be >= 0, got {value!r}"
    if positive_death and params.d <= 0:
        return "d", f"d must be > 0 (stability analysis requires a positive death rate), got {params.d!r}"
    return None


def validate(params: ModelParameters) -> str | None:
    """Return ``None`` if *params* is admissible, else a message naming the
    first offending field."""
    found = _violation(params)
    return None if found is None else found[1]


def check_parameters(params: ModelParameters, positive_death: bool = True) -> ModelParameters:
    """Raise :class:`InvalidParameterError` unless *params* is admissible.

    Plain evaluation of the vector field only needs finite nonnegative
    rates; pass ``positive_death=False`` to skip the ``d > 0`` requirement
    that equilibrium and stability analysis depend on.
    """
    found = _violation(params, positive_death)
    if found is not None:
        raise InvalidParameterError(*found)
    return params


def rates(p, u_f, u_s, u_p):
    """Right-hand side on raw values.

    ``p`` is a 13-sequence in :data:`PARAM_NAMES` order. Each entry (and each
    state component) may be a float or a numpy array; broadcasting applies,
    which lets the integrator advance a batch of parameter sets at once.
    No validation is done here.
    """
    L_f, L_s, L_p, a_sf, a_pf, a_fs, a_fp, a_ps, a_sp, d, g_f, g_s, g_p = p
    du_f = L_f + a_sf * u_s + a_pf * u_p - d * u_f - a_fs * u_f - a_fp * u_f - g_f * u_f
    du_s = L_s + a_ps * u_p + a_fs * u_f - d * u_s - a_sf * u_s - a_sp * u_s - g_s * u_s
    du_p = L_p + a_sp * u_s + a_fp * u_f - d * u_p - a_ps * u_p - a_pf * u_p - g_p * u_p
    return du_f, du_s, du_p


def rhs(params: ModelParameters, state) -> tuple[float, float, float]:
    """Time derivative ``(dU_f/dt, dU_s/dt, dU_p/dt)`` at *state*."""
    check_parameters(params, positive_death=False)
    u_f, u_s, u_p = (float(x) for x in state)
    return rates(params.as_tuple(), u_f, u_s, u_p)


def total_rate(params: ModelParameters, state) -> float:
    """Rate of change of the total student population.

    Movement terms cancel pairwise, leaving admissions minus deaths and
    graduations.
    """
    check_parameters(params, positive_death=False)
    u_f, u_s, u_p = (float(x) for x in state)
    p = params
    return (
        p.lambda_cap_f + p.lambda_cap_s + p.lambda_cap_p
        - p.d * (u_f + u_s + u_p)
        - p.lambda_f * u_f - p.lambda_s * u_s - p.lambda_p * u_p
    )


def random_parameters(
    rng: np.random.Generator,
    rate_range: tuple[float, float] = (0.0, 1.0),
    d_range: tuple[float, float] = (0.01, 1.0),
) -> ModelParameters:
    """Draw every rate uniformly from *rate_range* and ``d`` from *d_range*."""
    values = rng.uniform(*rate_range, size=len(PARAM_NAMES))
    values[PARAM_NAMES.index("d")] = rng.uniform(*d_range)
    return ModelParameters(*map(float, values))
