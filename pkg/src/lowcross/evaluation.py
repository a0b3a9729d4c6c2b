"""ε-approximations from partitions, uniform baselines and benchmark rows."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Partition, SetSystem, crossing_number
from .generators import GenSpec, generate, make_rng
from .partitioner import ALGORITHMS, PotentialConfig, partition

__all__ = [
    "Sample",
    "ConfigError",
    "POWERLAW_VC_DIM",
    "CSV_COLUMNS",
    "error_factor",
    "eps_approx_from_partition",
    "uniform_sample",
    "BenchDescriptor",
    "bench_suite",
    "write_csv",
]

CSV_COLUMNS = ("family", "n", "m", "d", "t", "algo", "w", "seed", "kappa",
               "violations_practical", "violations_theoretical", "runtime_ms", "epsilon")


# observed VC-dimension of power-law neighborhood systems, keyed by (n, beta);
# used as the potential exponent for those benchmarks
POWERLAW_VC_DIM = {
    (2000, 2.0): 5.2, (2000, 2.5): 3.8, (2000, 3.0): 3.0,
    (4000, 2.0): 5.8, (4000, 2.5): 4.05, (4000, 3.0): 3.0,
    (30000, 2.0): 6.8, (30000, 2.5): 4.75, (30000, 3.0): 3.0,
}
FACEBOOK_VC_DIM = 6
ARXIV_VC_DIM = 5


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Sample:
    elements: np.ndarray
    epsilon: float
    provenance: str


def error_factor(system: SetSystem, A) -> float:
    """Largest gap between a range's density in ``X`` and in ``A``."""
    idx = np.unique(np.asarray(A, dtype=np.int64))
    if idx.size == 0:
        raise ValueError("sample must be nonempty")
    if idx[0] < 0 or idx[-1] >= system.n:
        raise ValueError(f"sample element outside [0, {system.n})")
    if system.m == 0:
        return 0.0
    inc = system.incidence
    full = inc.sum(axis=1) / system.n
    sub = inc[:, idx].sum(axis=1) / idx.size
    return float(np.abs(full - sub).max())


def eps_approx_from_partition(system: SetSystem, part: Partition, seed: int) -> Sample:
    """One uniformly chosen element from every part."""
    rng = make_rng(seed)
    picks = np.array([p[rng.integers(p.size)] for p in part.parts() if p.size])
    return Sample(picks, error_factor(system, picks), "partition-based")


def uniform_sample(system: SetSystem, size: int, seed: int) -> Sample:
    if not 1 <= size <= system.n:
        raise ValueError(f"sample size must lie in [1, {system.n}], got {size}")
    picks = np.sort(make_rng(seed).choice(system.n, size=size, replace=False))
    return Sample(picks, error_factor(system, picks), "uniform")


_GEN_FIELDS = {"family", "n", "d", "m", "beta", "r", "order", "circles", "edgelist"}
_RUN_FIELDS = {"algorithms", "t", "seeds", "w", "potential_d", "mode", "threads", "epsilon"}


@dataclass
class BenchDescriptor:
    """Experiment description: one generator, a set of algorithms, ``t`` values, seeds.

    Each seed regenerates the instance (for random families) and drives the
    partitioner.  ``algorithms`` may include ``"uniform"`` for the uniform
    sample baseline, which reports only ``epsilon``.
    """

    gen: dict
    algorithms: list
    t: list
    seeds: list
    w: int | None = None
    potential_d: float | None = None
    mode: str = "practical"
    threads: int = 1
    epsilon: bool = True

    @classmethod
    def from_dict(cls, raw: dict) -> "BenchDescriptor":
        unknown = set(raw) - _GEN_FIELDS - _RUN_FIELDS
        if unknown:
            raise ConfigError(f"unknown descriptor field(s): {sorted(unknown)}")
        if "family" not in raw:
            raise ConfigError("descriptor needs a 'family'")
        gen = {k: raw[k] for k in _GEN_FIELDS if k in raw}
        seeds = raw.get("seeds", 10)
        seeds = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
        ts = raw.get("t", [])
        ts = [ts] if isinstance(ts, int) else list(ts)
        algos = list(raw.get("algorithms", []))
        bad = [a for a in algos if a not in ALGORITHMS + ("uniform",)]
        if bad:
            raise ConfigError(f"unknown algorithm(s) {bad}")
        return cls(gen, algos, ts, seeds, raw.get("w"), raw.get("potential_d"),
                   raw.get("mode", "practical"), int(raw.get("threads", 1)), bool(raw.get("epsilon", True)))

    @classmethod
    def load(cls, path: str) -> "BenchDescriptor":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def gen_spec(self, seed: int) -> GenSpec:
        g = dict(self.gen)
        if "order" in g:
            g["a"] = g.pop("order")
        try:
            return GenSpec(seed=seed, **g)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def default_potential_d(self, system: SetSystem) -> float:
        if self.potential_d is not None:
            return float(self.potential_d)
        fam = self.gen["family"]
        if fam in ("grid", "random-halfspaces"):
            return float(self.gen["d"])
        if fam == "power-law":
            return POWERLAW_VC_DIM.get((int(self.gen["n"]), float(self.gen["beta"])), 2.0)
        return 2.0


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def bench_suite(desc: BenchDescriptor | dict) -> list[dict]:
    """One row per (instance, algorithm, seed) plus one aggregate row per
    (instance, algorithm) whose numeric cells read ``mean±std``.

    ``kappa`` is recomputed from the emitted partition.
    """
    if isinstance(desc, dict):
        desc = BenchDescriptor.from_dict(desc)
    rows: list[dict] = []
    if not desc.algorithms:
        return rows
    for t in desc.t:
        per_algo: dict[str, list[dict]] = {a: [] for a in desc.algorithms}
        for seed in desc.seeds:
            system = generate(desc.gen_spec(seed))
            d = desc.default_potential_d(system)
            for algo in desc.algorithms:
                row = {"family": system.family, "n": system.n, "m": system.m, "d": d, "t": t,
                       "algo": algo, "w": None, "seed": seed, "kappa": None,
                       "violations_practical": None, "violations_theoretical": None,
                       "runtime_ms": None, "epsilon": None}
                if algo == "uniform":
                    row["epsilon"] = uniform_sample(system, t, seed).epsilon
                else:
                    part, rep = partition(system, t, PotentialConfig(d, desc.mode, t), algo,
                                          desc.w, seed, desc.threads)
                    row.update(w=rep.params["w"], kappa=crossing_number(system, part).kappa,
                               violations_practical=rep.total_practical,
                               violations_theoretical=rep.total_theoretical,
                               runtime_ms=rep.runtime_s * 1e3)
                    if desc.epsilon:
                        row["epsilon"] = eps_approx_from_partition(system, part, seed).epsilon
                rows.append(row)
                per_algo[algo].append(row)
        for algo, group in per_algo.items():
            rows.append(_aggregate(group))
    return rows


def _aggregate(group: Sequence[dict]) -> dict:
    agg = dict(group[0])
    agg["seed"] = "mean±std"
    for col in ("m", "kappa", "violations_practical", "violations_theoretical", "runtime_ms", "epsilon"):
        vals = [r[col] for r in group if r[col] is not None]
        if vals:
            agg[col] = f"{np.mean(vals):.6g}±{np.std(vals):.6g}"
    return agg


def write_csv(rows: Iterable[dict], stream=None) -> str:
    """Write rows in the fixed column order; returns the text when no stream is given."""
    out = stream if stream is not None else io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return out.getvalue() if stream is None else ""
