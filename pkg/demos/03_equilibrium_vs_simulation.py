# %% [markdown]
# # Equilibrium and long-run behaviour
#
# The model is affine in the state, so the equilibrium solves a 3x3 linear
# system. A long simulation from an all-federal start should settle there.

# %%
from strikemodel import ModelParameters, SimulationConfig, analyze_stability, fixed_point_iterate, simulate, solve_equilibrium

params = ModelParameters(
    lambda_cap_f=10, lambda_cap_s=5, lambda_cap_p=2, d=0.02,
    alpha_fs=0.1, alpha_fp=0.05, alpha_sp=0.08,
    lambda_f=0.2, lambda_s=0.2, lambda_p=0.25,
)
eq = solve_equilibrium(params)
print("direct solve   ", eq.state, "residual", eq.residual)
print("fixed point    ", fixed_point_iterate(params))

# %%
rep = analyze_stability(params)
print(rep.verdict.value, [complex(z) for z in rep.eigenvalues])

# %%
traj = simulate(params, SimulationConfig(eligible_population=100, t_end=1000, dt=0.05))
for t in (0, 50, 200, 500, 1000):
    s = traj.state_at(t)
    gap = max(abs(a - b) for a, b in zip(s, eq.state))
    print(f"t={t:>4}  U_f={s.u_f:9.4f} U_s={s.u_s:9.4f} U_p={s.u_p:9.4f}  gap {gap:.2e}")
