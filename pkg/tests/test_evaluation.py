import csv
import io

import numpy as np
import pytest

from lowcross.core import Partition, SetSystem, crossing_number
from lowcross.evaluation import (CSV_COLUMNS, BenchDescriptor, ConfigError, bench_suite,
                                 eps_approx_from_partition, error_factor, uniform_sample, write_csv)
from lowcross.generators import gen_grid

from conftest import random_system
from oracles import error_factor_naive


def test_error_factor_examples():
    s = SetSystem.from_ranges(4, [[0, 1]])
    assert error_factor(s, [0]) == pytest.approx(0.5)
    assert error_factor(s, range(4)) == 0.0
    with pytest.raises(ValueError):
        error_factor(s, [])


def test_error_factor_matches_naive():
    s = random_system(16, 8, 5)
    rng = np.random.default_rng(2)
    for _ in range(10):
        A = rng.choice(16, size=int(rng.integers(1, 17)), replace=False)
        assert error_factor(s, A) == pytest.approx(error_factor_naive(s, A.tolist()), abs=1e-15)


def test_error_factor_zero_for_whole_set():
    for seed in range(5):
        s = random_system(20, 10, seed)
        assert error_factor(s, np.arange(20)) == 0.0


def test_partition_sample_singletons_and_single_part():
    s = random_system(10, 6, 0)
    full = eps_approx_from_partition(s, Partition(np.arange(10), 10), seed=1)
    assert sorted(full.elements.tolist()) == list(range(10)) and full.epsilon == 0.0
    one = eps_approx_from_partition(s, Partition(np.zeros(10), 1), seed=1)
    assert one.elements.size == 1 and one.provenance == "partition-based"


def test_partition_sample_one_per_part():
    s = random_system(30, 6, 3)
    part = Partition(np.arange(30) % 7, 7)
    smp = eps_approx_from_partition(s, part, seed=4)
    assert sorted(part.part_of[smp.elements].tolist()) == list(range(7))
    assert 0 <= smp.epsilon <= 1


def test_uniform_sample():
    s = random_system(25, 5, 1)
    a = uniform_sample(s, 7, seed=3)
    b = uniform_sample(s, 7, seed=3)
    assert np.array_equal(a.elements, b.elements)
    assert np.unique(a.elements).size == 7
    assert uniform_sample(s, 25, seed=0).epsilon == 0.0
    for bad in (0, 26):
        with pytest.raises(ValueError):
            uniform_sample(s, bad, seed=0)


def test_bench_empty_algorithms():
    rows = bench_suite({"family": "grid", "n": 64, "d": 2, "algorithms": [], "t": [4], "seeds": 2})
    assert rows == []
    assert write_csv(rows).strip() == ",".join(CSV_COLUMNS)


def test_bench_row_arithmetic_and_kappa():
    desc = {"family": "grid", "n": 128, "d": 2, "algorithms": ["minweight", "partatonce"], "t": [8], "seeds": 3}
    rows = bench_suite(desc)
    data = [r for r in rows if r["seed"] != "mean±std"]
    agg = [r for r in rows if r["seed"] == "mean±std"]
    assert len(data) == 6 and len(agg) == 2
    for r in data:
        s = gen_grid(128, 2, r["seed"])
        assert r["w"] == (30 if r["algo"] == "partatonce" else None)
        assert r["m"] == s.m and r["d"] == 2.0
    mw = [r["kappa"] for r in data if r["algo"] == "minweight"]
    agg_mw = next(r for r in agg if r["algo"] == "minweight")
    assert agg_mw["kappa"] == f"{np.mean(mw):.6g}±{np.std(mw):.6g}"


def test_bench_kappa_is_recomputed():
    desc = BenchDescriptor.from_dict({"family": "grid", "n": 100, "d": 2, "algorithms": ["greedy"],
                                      "t": 5, "seeds": [7]})
    row = bench_suite(desc)[0]
    from lowcross.partitioner import PotentialConfig, partition
    part, _ = partition(gen_grid(100, 2, 7), 5, PotentialConfig(2.0), "greedy", seed=7)
    assert row["kappa"] == crossing_number(gen_grid(100, 2, 7), part).kappa


def test_bench_uniform_baseline_row():
    rows = bench_suite({"family": "grid", "n": 64, "d": 2, "algorithms": ["uniform"], "t": [8], "seeds": [1]})
    assert rows[0]["kappa"] is None and rows[0]["epsilon"] == uniform_sample(gen_grid(64, 2, 1), 8, 1).epsilon


def test_bench_unknown_field_is_config_error():
    with pytest.raises(ConfigError):
        bench_suite({"family": "grid", "n": 64, "d": 2, "algorithms": ["minweight"], "t": [4], "colour": 1})
    with pytest.raises(ConfigError):
        bench_suite({"family": "grid", "n": 64, "d": 2, "algorithms": ["quick"], "t": [4]})
    with pytest.raises(ConfigError):
        bench_suite({"family": "grid", "n": 64, "algorithms": ["minweight"], "t": [4], "seeds": 1})


def test_csv_column_order():
    rows = bench_suite({"family": "projective-plane", "order": 3, "algorithms": ["partatonce"], "t": [3], "seeds": 1})
    text = write_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_COLUMNS
    assert parsed[1][0] == "projective-plane" and parsed[1][1] == "13"
    assert len(parsed) == 3
