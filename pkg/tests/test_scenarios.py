import numpy as np
import pytest

from strikemodel.model import PARAM_NAMES, ModelParameters, SimulationConfig, random_parameters
from strikemodel.scenarios import (
    BUILTIN_MASKS,
    MOVEMENT_RESTRICTED,
    THEOREM_2_1,
    THEOREM_2_2,
    THEOREM_2_3,
    NoClosedFormError,
    ScenarioError,
    ScenarioMask,
    UnknownFieldError,
    apply_mask,
    eigenvalues_match,
    expected_eigenvalues,
    get_mask,
    run_scenario,
)
from strikemodel.stability import Verdict, eigenvalues_3x3, jacobian

SHORT = SimulationConfig(eligible_population=10, t_end=1, dt=0.1)
REFERENCE_23 = ModelParameters(lambda_cap_f=10, lambda_cap_s=5, lambda_cap_p=2, d=0.02, lambda_p=0.25, alpha_sp=0.3)


def nonzero(p):
    return {k for k, v in p.as_dict().items() if v != 0}


def test_builtin_mask_contents():
    assert THEOREM_2_1.zeroed_fields == {"alpha_ps", "alpha_pf", "alpha_sf", "lambda_f"}
    assert THEOREM_2_2.zeroed_fields == {"alpha_ps", "alpha_pf", "alpha_sf", "alpha_fp", "lambda_f"}
    assert THEOREM_2_3.zeroed_fields == {"alpha_sf", "alpha_fs", "alpha_ps", "alpha_pf", "lambda_f", "lambda_s"}
    for mask in BUILTIN_MASKS.values():
        assert mask.zeroed_fields <= set(PARAM_NAMES)


def test_empty_mask_is_identity():
    p = ModelParameters.uniform(0.1)
    assert apply_mask(p, ScenarioMask("none", set())) == p


def test_theorem_2_3_survivors():
    p = apply_mask(ModelParameters.uniform(0.1), THEOREM_2_3)
    assert nonzero(p) == {"alpha_sp", "alpha_fp", "lambda_p", "d", "lambda_cap_f", "lambda_cap_s", "lambda_cap_p"}


def test_movement_restricted_survivors():
    assert nonzero(apply_mask(ModelParameters.uniform(0.1), MOVEMENT_RESTRICTED)) == {"lambda_cap_f", "d"}


def test_unknown_field():
    with pytest.raises(UnknownFieldError):
        apply_mask(ModelParameters.uniform(0.1), ScenarioMask("bad", {"alpha_xy"}))


def test_mask_idempotent(rng):
    for mask in BUILTIN_MASKS.values():
        p = random_parameters(rng)
        once = apply_mask(p, mask)
        assert apply_mask(once, mask) == once


def test_get_mask():
    assert get_mask("THEOREM_2_2") is THEOREM_2_2
    with pytest.raises(KeyError):
        get_mask("THEOREM_9")


def test_expected_theorem_2_3():
    assert expected_eigenvalues("THEOREM_2_3", REFERENCE_23) == pytest.approx([-0.32, -0.27, -0.02])


def test_expected_theorem_2_2():
    p = ModelParameters(d=0.02, lambda_p=0.25, alpha_sp=0.3, lambda_s=0.2, alpha_fs=0.1)
    assert expected_eigenvalues("THEOREM_2_2", p) == pytest.approx(sorted([-0.27, -0.52, -0.12]))


def test_expected_theorem_2_1_all_zero():
    assert expected_eigenvalues("THEOREM_2_1", ModelParameters(d=0.4)) == [-0.4, -0.4, -0.4]


def test_expected_no_closed_form():
    with pytest.raises(NoClosedFormError):
        expected_eigenvalues("MOVEMENT_RESTRICTED", ModelParameters(d=0.1))


def test_eigenvalues_match_helper():
    assert eigenvalues_match([-1 + 0j, -2, -3], [-3, -1, -2])
    assert not eigenvalues_match([-1, -2, -3], [-1, -2, -3 + 2e-9])


def test_run_theorem_2_3_reference_parameters():
    rep = run_scenario(REFERENCE_23, THEOREM_2_3, SHORT)
    assert rep.stability.verdict is Verdict.ASYMPTOTICALLY_STABLE
    assert rep.stability.routh_hurwitz_stable
    assert rep.eigenvalue_match is True


def test_run_theorem_2_3_with_federal_outflow_does_not_match_closed_form():
    p = ModelParameters(**{**REFERENCE_23.as_dict(), "alpha_fp": 0.05})
    rep = run_scenario(p, THEOREM_2_3, SHORT)
    assert rep.stability.verdict is Verdict.ASYMPTOTICALLY_STABLE
    assert rep.eigenvalue_match is False


def test_run_movement_restricted():
    rep = run_scenario(ModelParameters(lambda_cap_f=10, d=0.1, alpha_fs=0.3, lambda_cap_s=4),
                       MOVEMENT_RESTRICTED, SimulationConfig(t_end=200, dt=0.01))
    assert rep.equilibrium.state == pytest.approx((100, 0, 0), abs=1e-12)
    assert rep.stability.verdict is Verdict.ASYMPTOTICALLY_STABLE
    assert rep.expected_eigenvalues is None and rep.eigenvalue_match is None
    # closed form: 100 * exp(-20) away from the asymptote at t = 200
    assert rep.trajectory_summary.distance_to_equilibrium == pytest.approx(100 * np.exp(-20), rel=1e-6)


def test_run_scenario_labels_stage():
    with pytest.raises(ScenarioError) as exc:
        run_scenario(ModelParameters(lambda_cap_f=1), THEOREM_2_1, SHORT)
    assert exc.value.stage == "mask"
    with pytest.raises(ScenarioError) as exc:
        run_scenario(ModelParameters(d=1), THEOREM_2_1, SimulationConfig(dt=0))
    assert exc.value.stage == "simulation"


@pytest.mark.parametrize("mask", [THEOREM_2_1, THEOREM_2_2, THEOREM_2_3])
def test_theorem_masks_always_stable(rng, mask):
    for _ in range(200):
        rep = run_scenario(random_parameters(rng), mask, SHORT)
        assert rep.stability.verdict is Verdict.ASYMPTOTICALLY_STABLE
        assert rep.stability.routh_hurwitz_stable


def test_closed_forms_from_derived_jacobian(rng):
    for _ in range(200):
        p = random_parameters(rng)
        q = apply_mask(p, THEOREM_2_1)
        got = eigenvalues_3x3(jacobian(q))
        assert all(z.imag == 0 and z.real <= -q.d for z in got)
        assert eigenvalues_match(got, [-q.d - q.alpha_fs - q.alpha_fp, -q.d - q.alpha_sp - q.lambda_s, -q.d - q.lambda_p])

        q = apply_mask(p, THEOREM_2_3)
        assert eigenvalues_match(eigenvalues_3x3(jacobian(q)),
                                 [-q.d - q.alpha_fp, -q.d - q.alpha_sp, -q.d - q.lambda_p])


def test_theorem_2_2_match_every_draw(rng):
    for _ in range(200):
        assert run_scenario(random_parameters(rng), THEOREM_2_2, SHORT).eigenvalue_match


def test_theorem_2_1_match_without_state_to_private(rng):
    for _ in range(200):
        p = ModelParameters(**{**random_parameters(rng).as_dict(), "alpha_sp": 0.0})
        assert run_scenario(p, THEOREM_2_1, SHORT).eigenvalue_match


def test_theorem_2_3_match_without_federal_to_private(rng):
    for _ in range(200):
        p = ModelParameters(**{**random_parameters(rng).as_dict(), "alpha_fp": 0.0})
        assert run_scenario(p, THEOREM_2_3, SHORT).eigenvalue_match
