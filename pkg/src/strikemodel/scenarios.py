"""Strike scenarios as parameter masks, and per-scenario analysis.

A mask names the rates forced to zero. The three theorem masks follow the
triangular Jacobians of the strike regimes:

* ``THEOREM_2_1``: state and private universities in session; nothing moves
  out of private universities or from state to federal, federal
  graduations stop.
* ``THEOREM_2_2``: as above, and federal students no longer move to
  private universities.
* ``THEOREM_2_3``: federal and state universities on strike; only moves
  into private universities remain, with private graduations.
* ``MOVEMENT_RESTRICTED``: no movement at all, no graduations, and only
  federal admissions, so ``(L_f/d, 0, 0)`` is an invariant equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .equilibrium import EquilibriumResult, solve_equilibrium
from .model import (
    GRADUATION_NAMES,
    MOVEMENT_NAMES,
    PARAM_NAMES,
    ModelParameters,
    SimulationConfig,
    State,
    check_parameters,
)
from .simulator import simulate
from .stability import StabilityReport, analyze_stability

MATCH_TOL = 1e-9


class UnknownFieldError(KeyError):
    pass


class NoClosedFormError(LookupError):
    pass


class ScenarioError(RuntimeError):
    """Failure inside :func:`run_scenario`; ``stage`` names the step."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class ScenarioMask:
    name: str
    zeroed_fields: frozenset[str]
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "zeroed_fields", frozenset(self.zeroed_fields))


THEOREM_2_1 = ScenarioMask(
    "THEOREM_2_1",
    {"alpha_ps", "alpha_pf", "alpha_sf", "lambda_f"},
    "State and private universities in session during a federal strike.",
)
THEOREM_2_2 = ScenarioMask(
    "THEOREM_2_2",
    {"alpha_ps", "alpha_pf", "alpha_sf", "alpha_fp", "lambda_f"},
    "Some state universities partially in session during a federal strike.",
)
THEOREM_2_3 = ScenarioMask(
    "THEOREM_2_3",
    {"alpha_sf", "alpha_fs", "alpha_ps", "alpha_pf", "lambda_f", "lambda_s"},
    "Federal and state universities on strike; private universities open.",
)
MOVEMENT_RESTRICTED = ScenarioMask(
    "MOVEMENT_RESTRICTED",
    set(MOVEMENT_NAMES) | set(GRADUATION_NAMES) | {"lambda_cap_s", "lambda_cap_p"},
    "No movement between compartments; one public system with admissions only.",
)

BUILTIN_MASKS: dict[str, ScenarioMask] = {
    m.name: m for m in (THEOREM_2_1, THEOREM_2_2, THEOREM_2_3, MOVEMENT_RESTRICTED)
}


def get_mask(name: str) -> ScenarioMask:
    try:
        return BUILTIN_MASKS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; expected one of {sorted(BUILTIN_MASKS)}") from None


def apply_mask(params: ModelParameters, mask: ScenarioMask) -> ModelParameters:
    unknown = sorted(set(mask.zeroed_fields) - set(PARAM_NAMES))
    if unknown:
        raise UnknownFieldError(f"mask {mask.name!r} names unknown parameter(s): {', '.join(unknown)}")
    return replace(params, **{name: 0.0 for name in mask.zeroed_fields})


def expected_eigenvalues(mask_name: str, params: ModelParameters) -> list[float]:
    """Closed-form eigenvalues stated for a theorem scenario, evaluated on
    the masked parameters and sorted ascending.

    For ``THEOREM_2_3`` these are ``-d, -d - lambda_p, -d - alpha_sp``; the
    Jacobian of the equations has ``-d - alpha_fp`` in place of ``-d``, so
    the two agree only when ``alpha_fp == 0``. Likewise ``THEOREM_2_1``
    omits ``alpha_sp`` from the state outflow.
    """
    if mask_name not in ("THEOREM_2_1", "THEOREM_2_2", "THEOREM_2_3"):
        raise NoClosedFormError(f"no closed-form eigenvalues for scenario {mask_name!r}")
    p = apply_mask(check_parameters(params), BUILTIN_MASKS[mask_name])
    d = p.d
    if mask_name == "THEOREM_2_1":
        vals = [-d - p.lambda_s, -d - p.alpha_ps - p.lambda_p, -d - p.alpha_fs - p.alpha_fp]
    elif mask_name == "THEOREM_2_2":
        vals = [-d - p.lambda_p, -d - p.alpha_sp - p.lambda_s, -d - p.alpha_fs]
    else:
        vals = [-d, -d - p.lambda_p, -d - p.alpha_sp]
    return sorted(vals)


def eigenvalues_match(computed, expected, tol: float = MATCH_TOL) -> bool:
    a = sorted((complex(z) for z in computed), key=lambda z: (z.real, z.imag))
    b = sorted(float(x) for x in expected)
    return len(a) == len(b) and all(abs(z - x) <= tol for z, x in zip(a, b))


@dataclass(frozen=True)
class TrajectorySummary:
    t_end: float
    final_state: State
    distance_to_equilibrium: float


@dataclass(frozen=True)
class ScenarioReport:
    mask: ScenarioMask
    masked_params: ModelParameters
    equilibrium: EquilibriumResult
    stability: StabilityReport
    trajectory_summary: TrajectorySummary
    expected_eigenvalues: list[float] | None = None
    eigenvalue_match: bool | None = field(default=None)


def run_scenario(
    params: ModelParameters,
    mask: ScenarioMask,
    config: SimulationConfig,
) -> ScenarioReport:
    """Mask *params*, then solve for the equilibrium, analyse stability and
    simulate. Errors are wrapped in :class:`ScenarioError` with the stage
    name."""
    try:
        masked = apply_mask(check_parameters(params), mask)
        check_parameters(masked)
    except Exception as exc:
        raise ScenarioError("mask", exc) from exc

    try:
        eq = solve_equilibrium(masked)
    except Exception as exc:
        raise ScenarioError("equilibrium", exc) from exc
    if not eq.unique:
        raise ScenarioError("equilibrium", ArithmeticError("singular equilibrium system"))

    try:
        stab = analyze_stability(masked)
    except Exception as exc:
        raise ScenarioError("stability", exc) from exc

    try:
        traj = simulate(masked, config)
    except Exception as exc:
        raise ScenarioError("simulation", exc) from exc
    final = traj.final_state
    summary = TrajectorySummary(
        t_end=float(traj.times[-1]),
        final_state=final,
        distance_to_equilibrium=max(abs(a - b) for a, b in zip(final, eq.state)),
    )

    expected = match = None
    if mask.name in ("THEOREM_2_1", "THEOREM_2_2", "THEOREM_2_3") and BUILTIN_MASKS[mask.name] == mask:
        expected = expected_eigenvalues(mask.name, masked)
        match = eigenvalues_match(stab.eigenvalues, expected)

    return ScenarioReport(
        mask=mask,
        masked_params=masked,
        equilibrium=eq,
        stability=stab,
        trajectory_summary=summary,
        expected_eigenvalues=expected,
        eigenvalue_match=match,
    )
