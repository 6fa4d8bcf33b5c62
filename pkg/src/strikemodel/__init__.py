"""Compartmental model of student movement between federal, state and
private universities during strikes."""

from .equilibrium import (
    EquilibriumResult,
    build_linear_system,
    fixed_point_iterate,
    gauss_solve,
    solve_equilibrium,
)
from .model import (
    PARAM_NAMES,
    InvalidParameterError,
    ModelParameters,
    SimulationConfig,
    State,
    random_parameters,
    rhs,
    total_rate,
    validate,
)
from .scenarios import (
    BUILTIN_MASKS,
    MOVEMENT_RESTRICTED,
    THEOREM_2_1,
    THEOREM_2_2,
    THEOREM_2_3,
    ScenarioMask,
    ScenarioReport,
    apply_mask,
    expected_eigenvalues,
    run_scenario,
)
from .simulator import (
    RestrictedSolution,
    Trajectory,
    asymptote,
    restricted_analytic,
    simulate,
    step_rk4,
)
from .stability import (
    CharacteristicPolynomial,
    StabilityReport,
    Verdict,
    analyze_stability,
    characteristic_coefficients,
    classify,
    eigenvalues_3x3,
    jacobian,
    jacobian_fd,
    routh_hurwitz,
    solve_cubic,
)

__version__ = "0.1.0"
