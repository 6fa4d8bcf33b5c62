# %% [markdown]
# # Strike scenarios
#
# Draw one set of rates, apply each built-in strike mask, and look at the
# Jacobian eigenvalues next to the closed forms for the masked system.

# %%
import numpy as np

from strikemodel import BUILTIN_MASKS, SimulationConfig, random_parameters, run_scenario
from strikemodel.export import render_report

rng = np.random.default_rng(7)
params = random_parameters(rng)
print(params)

# %%
config = SimulationConfig(eligible_population=100, t_end=200, dt=0.05)
for name, mask in BUILTIN_MASKS.items():
    print(render_report(run_scenario(params, mask, config)))

# %% [markdown]
# Under ``THEOREM_2_3`` the closed form lists ``-d`` while the Jacobian has
# ``-d - alpha_fp``: federal students still leave for private universities
# under that mask. Setting ``alpha_fp = 0`` makes the two agree.

# %%
from dataclasses import replace

from strikemodel import THEOREM_2_3

rep = run_scenario(replace(params, alpha_fp=0.0), THEOREM_2_3, config)
print("eigenvalues ", [round(z.real, 12) for z in rep.stability.eigenvalues])
print("closed form ", rep.expected_eigenvalues)
print("match       ", rep.eigenvalue_match)
