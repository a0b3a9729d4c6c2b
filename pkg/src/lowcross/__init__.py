"""Balanced low-crossing partitions for finite set systems."""

from .core import CrossingReport, Partition, SetSystem, crosses, crossing_number, validate_partition
from .evaluation import bench_suite, eps_approx_from_partition, error_factor, uniform_sample
from .generators import (Graph, gen_circle_disks, gen_graph_neighborhood, gen_grid, gen_powerlaw_graph,
                         gen_projective_plane, gen_random_halfspaces, load_graph_edgelist)
from .partitioner import PotentialConfig, RunReport, WeightState, partition, potential_threshold, search_d

__version__ = "0.1.0"
