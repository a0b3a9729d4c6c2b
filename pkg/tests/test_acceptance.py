"""Acceptance gate: one verdict line per criterion at its pinned tolerance.

Verdicts are collected in ``conftest.ACCEPTANCE`` and printed in the
terminal summary, so ``pytest tests/test_acceptance.py`` ends with a
PASS/FAIL table.  Each test records its line before asserting.
"""
import io
import os
import time

import numpy as np
import pytest

from lowcross.core import Partition, crossing_number, size_law_feasible, validate_partition
from lowcross.evaluation import eps_approx_from_partition, uniform_sample
from lowcross.fileio import read_partition, read_setsystem, write_partition, write_setsystem
from lowcross.generators import (GenSpec, gen_graph_neighborhood, gen_grid, gen_projective_plane,
                                 generate, load_graph_edgelist, make_rng)
from lowcross.partitioner import PotentialConfig, WeightState, partition

from conftest import ACCEPTANCE, random_system
from oracles import crossing_counts_naive, minweight_naive, omega_naive

SEEDS = range(10)
GRID = PotentialConfig(2.0)

# every partition produced in this module, for the validity criterion
OUTPUTS: list[tuple] = []


def record(name, ok, detail):
    ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


def run(system, t, cfg, algo, seed, **kw):
    part, rep = partition(system, t, cfg, algo, seed=seed, **kw)
    OUTPUTS.append((system, part))
    return part, rep


def test_c1_grid_2048():
    kappas = {a: [] for a in ("minweight", "partatonce", "greedy")}
    start = time.perf_counter()
    for seed in SEEDS:
        s = gen_grid(2048, 2, seed)
        for algo in kappas:
            kappas[algo].append(run(s, 128, GRID, algo, seed)[1].kappa)
    per_seed = (time.perf_counter() - start) / len(SEEDS)
    mean = {a: float(np.mean(v)) for a, v in kappas.items()}
    ok = mean["minweight"] <= 23 and mean["partatonce"] <= 30 and mean["greedy"] <= 60 and per_seed < 5
    record("1 grid n=2048 t=128", ok,
           f"minweight {mean['minweight']:.1f}<=23, partatonce {mean['partatonce']:.1f}<=30, "
           f"greedy {mean['greedy']:.1f}<=60, {per_seed:.2f}s per seed (all three) <5s")
    assert ok


def test_c2_grid_scaling():
    k512, k128, times = [], [], []
    for seed in SEEDS:
        s = gen_grid(32768, 2, seed)
        _, rep = run(s, 512, GRID, "minweight", seed)
        k512.append(rep.kappa)
        times.append(rep.runtime_s)
        k128.append(run(s, 128, GRID, "minweight", seed)[1].kappa)
    ratio = np.mean(k512) / np.mean(k128)
    ok = np.mean(k512) <= 50 and ratio < 4 and max(times) < 60
    record("2 grid n=32768 t=512", ok,
           f"minweight {np.mean(k512):.1f}<=50, kappa(512)/kappa(128)={ratio:.2f}<4, "
           f"slowest run {max(times):.1f}s <60s")
    assert ok


def test_c3_eps_approximation():
    eps_part, eps_unif = [], []
    for seed in SEEDS:
        s = gen_grid(8192, 2, seed)
        part, _ = run(s, 128, GRID, "minweight", seed)
        eps_part.append(eps_approx_from_partition(s, part, seed).epsilon)
        eps_unif.append(uniform_sample(s, 128, seed).epsilon)
    p, u = float(np.mean(eps_part)), float(np.mean(eps_unif))
    ok = p <= 0.6 * u and 0.06 <= u <= 0.12
    record("3 eps-approximation grid n=8192 t=128", ok,
           f"partition {p:.4f} <= 0.6*uniform ({0.6 * u:.4f}), uniform {u:.4f} in [0.06,0.12]")
    assert ok


@pytest.mark.parametrize("t", [90, 120])
def test_c4_projective_plane(t):
    s = gen_projective_plane(13)
    kappas = []
    for seed in SEEDS:
        part, rep = run(s, t, GRID, "partatonce", seed)
        brute = max(crossing_counts_naive(s, part.part_of, t))
        assert brute == rep.kappa
        kappas.append(rep.kappa)
    lo, hi = min(kappas), max(kappas)
    ok = lo >= 11 and hi <= 14
    record(f"4 projective plane a=13 t={t}", ok,
           f"partatonce kappa in [{lo},{hi}], required within [11,14] (brute-force checked)")
    assert ok


def test_c5_violation_ordering():
    vm, vg = [], []
    for seed in SEEDS:
        s = gen_grid(8192, 2, seed)
        vm.append(run(s, 512, GRID, "minweight", seed)[1].total_practical)
        vg.append(run(s, 512, GRID, "greedy", seed)[1].total_practical)
    m, g = float(np.mean(vm)), float(np.mean(vg))
    ok = m <= 10 and m < g
    record("5 violations grid n=8192 t=512", ok, f"minweight {m:.1f}<=10 and < greedy {g:.1f}")
    assert ok


def test_c6_powerlaw():
    cfg = PotentialConfig(3.8)
    kappas = []
    for seed in SEEDS:
        s = generate(GenSpec("power-law", n=2000, beta=2.5, r=1, seed=seed))
        kappas.append(run(s, 128, cfg, "minweight", seed)[1].kappa)
    mean = float(np.mean(kappas))
    bound = 128 ** (1 - 1 / 3.8)
    ok = mean <= 21 and mean < bound
    record("6 power-law n=2000 t=128", ok, f"minweight {mean:.1f}<=21 and <{bound:.1f}")
    assert ok


def _random_case(rng):
    n = int(rng.integers(2, 65))
    m = int(rng.integers(0, 65))
    s = random_system(n, m, int(rng.integers(2**31)), density=float(rng.uniform(0.1, 0.9)))
    return s, int(rng.integers(1, n + 1))


def test_c7a_incremental_omega():
    rng = np.random.default_rng(7001)
    bad = 0
    for case in range(200):
        s, t = _random_case(rng)
        st_ = WeightState(s)
        prng = make_rng(case)
        q = s.n // t
        step = st_.extend_part_greedy if case % 2 else st_.extend_part_minweight
        for i in range(t):
            x0 = st_.begin_part(prng)
            for _ in range(2, q + 1):
                step(GRID)
                rem = np.flatnonzero(st_.remaining)
                if rem.size == 0:
                    continue
                om = st_.current_omega()
                closed = st_.closed_form_omega()
                naive = omega_naive(s, st_.pi.tolist(), x0, st_.part, rem.tolist())
                if not (np.allclose(om[rem], closed[rem], rtol=1e-12, atol=1e-12)
                        and np.allclose(om[rem], [naive[x] for x in rem], rtol=1e-12, atol=1e-12)):
                    bad += 1
            if i == t - 1:
                st_.absorb_remaining()
            st_.mwu_update()
    record("7a incremental omega vs closed form", bad == 0, f"200 random cases n,m<=64, {bad} mismatching steps")
    assert bad == 0


def test_c7b_exponents_match_crossings():
    rng = np.random.default_rng(7002)
    bad = 0
    for case in range(60):
        s, t = _random_case(rng)
        algo = ("greedy", "minweight", "partatonce")[case % 3]
        part, rep = run(s, t, GRID, algo, case, w=20)
        if rep.exponents.tolist() != crossing_counts_naive(s, part.part_of, t):
            bad += 1
    record("7b MWU exponents equal crossing counts", bad == 0, f"60 random runs, {bad} mismatches")
    assert bad == 0


def test_c7c_validity_of_all_outputs():
    # runs after the criteria above, so OUTPUTS holds every partition of this module
    rng = np.random.default_rng(7003)
    for case in range(60):
        s, t = _random_case(rng)
        run(s, t, GRID, ("greedy", "minweight", "partatonce")[case % 3], case, w=20)
    failing, infeasible_only = 0, True
    for s, part in OUTPUTS:
        problems = validate_partition(s, part)
        if problems:
            failing += 1
            feasible = size_law_feasible(s.n, part.t)
            if feasible or not all(p.startswith("condition 2") for p in problems):
                infeasible_only = False
    ok = failing == 0
    record("7c every output satisfies the size law", ok,
           f"{failing}/{len(OUTPUTS)} outputs rejected; "
           + ("all rejections are condition-2 failures on (n,t) where no partition can satisfy it"
              if infeasible_only else "some rejections are NOT explained by arithmetic infeasibility"))
    assert ok


def test_c7d_weight_scaling():
    rng = np.random.default_rng(7004)
    bad = 0
    for case in range(30):
        s, t = _random_case(rng)
        base, _, _ = minweight_naive(s, t, case)
        for shift in (-30, 17):
            if minweight_naive(s, t, case, scale=2.0**shift)[0] != base:
                bad += 1
        # the library state: shifting every exponent is a power-of-two rescale
        seqs = []
        for shift in (0, 40):
            st_ = WeightState(s)
            st_.exponents[:] = np.arange(s.m) % 3 + shift
            seq = [st_.begin_part(make_rng(case))]
            seq += [st_.extend_part_minweight(GRID) for _ in range(2, s.n // t + 1)]
            seqs.append(seq)
        bad += seqs[0] != seqs[1]
    record("7d MinWeight invariant under power-of-two scaling", bad == 0, f"30 random cases, {bad} differences")
    assert bad == 0


def test_c7e_thread_independence():
    bad = 0
    for seed in range(3):
        s = gen_grid(2048, 2, seed)
        ref, _ = run(s, 64, GRID, "partatonce", seed, threads=1)
        for threads in (4, 8):
            bad += not run(s, 64, GRID, "partatonce", seed, threads=threads)[0].same_as(ref)
    record("7e PartAtOnce identical across 1/4/8 workers", bad == 0, f"3 seeds, {bad} differences")
    assert bad == 0


def test_c7f_roundtrips():
    rng = np.random.default_rng(7005)
    bad = 0
    systems = [gen_grid(512, 2, 1), gen_projective_plane(7),
               generate(GenSpec("circle-disks", n=200, circles=4, m=50, seed=2))]
    systems += [_random_case(rng)[0] for _ in range(20)]
    for s in systems:
        buf = io.StringIO()
        write_setsystem(s, buf)
        back = read_setsystem(io.StringIO(buf.getvalue()))
        again = io.StringIO()
        write_setsystem(back, again)
        bad += not (back.same_incidence(s) and again.getvalue() == buf.getvalue())
        t = int(rng.integers(1, s.n + 1))
        p = Partition(rng.integers(0, t, s.n), t)
        pb = io.StringIO()
        write_partition(p, pb)
        pb2 = io.StringIO()
        write_partition(read_partition(io.StringIO(pb.getvalue())), pb2)
        bad += pb.getvalue() != pb2.getvalue()
    record("7f file formats round-trip bit-identically", bad == 0, f"{len(systems)} systems + partitions, {bad} failures")
    assert bad == 0


FACEBOOK = os.environ.get("LOWCROSS_FACEBOOK_EDGES")


@pytest.mark.skipif(not FACEBOOK or not os.path.exists(FACEBOOK),
                    reason="set LOWCROSS_FACEBOOK_EDGES to the SNAP facebook_combined.txt path")
def test_c8_facebook_spot_check():
    with open(FACEBOOK, "rb") as fh:
        s = gen_graph_neighborhood(load_graph_edgelist(fh), 1)
    kappas = [run(s, 40, PotentialConfig(6.0), "minweight", seed)[1].kappa for seed in SEEDS]
    mean = float(np.mean(kappas))
    ok = mean <= 15
    record("8 facebook r=1 t=40", ok, f"minweight {mean:.1f}<=15")
    assert ok


def test_c8_recorded_when_skipped():
    if not FACEBOOK or not os.path.exists(FACEBOOK):
        ACCEPTANCE.append("SKIP  8 facebook r=1 t=40: edge list not available (set LOWCROSS_FACEBOOK_EDGES)")
