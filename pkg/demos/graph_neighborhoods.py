"""Partitioning the r-hop neighborhoods of a power-law graph.

Each vertex's ball of radius r is a range.  The potential exponent d is
set to the system's VC dimension rather than a geometric dimension.
"""
# %%
from lowcross import PotentialConfig, gen_graph_neighborhood, gen_powerlaw_graph, partition

g = gen_powerlaw_graph(2000, beta=2.5, seed=1)
print(f"graph: {g.n} vertices, {g.num_edges} edges, max degree {g.degrees().max()}")

# %%
t, d = 128, 3.8
for r in (1, 2):
    system = gen_graph_neighborhood(g, r)
    sizes = system.range_sizes()
    _, rep = partition(system, t, PotentialConfig(d), "minweight", seed=1)
    print(f"r={r}: mean ball {sizes.mean():.1f}, kappa={rep.kappa}, t^(1-1/d)={t ** (1 - 1 / d):.1f}")
