"""One point per part gives a better epsilon-approximation than uniform sampling."""
# %%
import numpy as np

from lowcross import PotentialConfig, eps_approx_from_partition, gen_grid, partition, uniform_sample

n, t = 8192, 128
part_eps, unif_eps = [], []
for seed in range(5):
    system = gen_grid(n, 2, seed)
    part, _ = partition(system, t, PotentialConfig(2.0), "minweight", seed=seed)
    part_eps.append(eps_approx_from_partition(system, part, seed).epsilon)
    unif_eps.append(uniform_sample(system, t, seed).epsilon)

# %%
print(f"sample size {t}")
print(f"partition-based eps: {np.mean(part_eps):.4f}")
print(f"uniform eps:         {np.mean(unif_eps):.4f}")
