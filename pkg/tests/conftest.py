import numpy as np
import pytest

from strikemodel.model import ModelParameters

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def coupled_params():
    # illustrative rates used across the hand-worked examples
    return ModelParameters(
        lambda_cap_f=10, lambda_cap_s=5, lambda_cap_p=2, d=0.02,
        alpha_fs=0.1, alpha_fp=0.05, alpha_sp=0.08,
        lambda_f=0.2, lambda_s=0.2, lambda_p=0.25,
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
