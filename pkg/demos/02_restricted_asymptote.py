# %% [markdown]
# # No movement between universities
#
# With every movement rate and graduation rate at zero each compartment
# relaxes on its own: ``U(t) = L/d + (U0 - L/d) exp(-d t)``. Compare RK4
# with that formula and check fourth-order convergence.

# %%
import numpy as np

from strikemodel import ModelParameters, RestrictedSolution, SimulationConfig, asymptote, restricted_analytic, simulate

lam, d = 10.0, 0.1
params = ModelParameters(lambda_cap_f=lam, d=d)
sol = RestrictedSolution(lam, d, 0.0)
print("asymptote L/d =", asymptote(sol))

# %%
for t in (0, 10, 25, 50, 100, 200):
    print(f"t={t:>4}  U={restricted_analytic(sol, t):.10f}")

# %%
def max_error(dt, t_end=50.0):
    traj = simulate(params, SimulationConfig(t_end=t_end, dt=dt, initial_state=(0, 0, 0)))
    exact = restricted_analytic(sol, traj.times)
    return np.max(np.abs(np.asarray(traj.states)[:, 0] - exact))


errors = {dt: max_error(dt) for dt in (2.0, 1.0, 0.5, 0.25, 0.01)}
for dt, err in errors.items():
    print(f"dt={dt:<5} max error {err:.3e}")
for a, b in ((2.0, 1.0), (1.0, 0.5), (0.5, 0.25)):
    print(f"ratio dt={a}/{b}: {errors[a] / errors[b]:.2f}")
