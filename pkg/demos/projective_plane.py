"""Projective planes: the family where no partition crosses few lines.

Any two lines meet in exactly one point, so once parts have at least two
points most lines cross many of them and kappa saturates near a + 1.
"""
# %%
from lowcross import PotentialConfig, gen_projective_plane, partition

a = 13
system = gen_projective_plane(a)
print(f"order {a}: {system.n} points, {system.m} lines of {a + 1} points")

# %%
for t in (10, 30, 60, 90, 120):
    _, rep = partition(system, t, PotentialConfig(2.0), "partatonce", seed=0)
    print(f"t={t:3d}: parts of {system.n // t} points, kappa={rep.kappa}  (a+1={a + 1})")
