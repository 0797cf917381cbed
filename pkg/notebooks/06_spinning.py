"""
Spinning a simplex out to infinity
==================================

Four geodesic rays run out towards the vertices of a regular ideal
tetrahedron. The straight simplex on their positions converges to the ideal
one; the angle error decays like exp(-t).
"""

# %%
import numpy as np

from hypgluing.spinning import model_scenario, random_scenario, spin_report, symmetric_scenario

rep = spin_report(symmetric_scenario())
print("limit shape", rep.limit_shape, "volume", rep.limit_volume)

# %%
for row in rep.rows[::5]:
    print(f"t={row.t:4.0f}  endpoint distance={row.endpoint_distance[0]:.2e}  angle error={row.angle_error:.2e}")
print("decay constant C with error <= C exp(-t):", rep.decay_constant)

# %%
# On the model geodesic (sinh t, 0, 0, cosh t) the time coordinate divided by cosh t is exactly 1.
model = spin_report(model_scenario())
print({row.t: row.cosh_ratio[0] for row in model.rows[:4]})

# %%
sc = random_scenario(np.random.default_rng(0))
rows = spin_report(sc).rows
print("random scenario, angle error at t=20:", rows[20].angle_error)
print(spin_report(sc).to_csv().splitlines()[0])
