"""Greedy low-crossing partitions with multiplicative range weights.

Three strategies share one :class:`WeightState`:

* ``greedy``     -- extend the current part with the first element whose
  cost keeps the prefix under the potential bound;
* ``minweight``  -- extend with the element of minimum cost;
* ``partatonce`` -- estimate costs from ``w`` weighted range samples and
  take the cheapest elements in one shot.

Range weights are ``2 ** c[F]`` where ``c[F]`` counts the finished parts
``F`` crosses.  Only the integer exponents are stored; floating weights are
materialized per part as ``2 ** (c - c.max())``, which rescales every
weight by the same power of two and leaves all selections unchanged.
"""

from __future__ import annotations

import math
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Partition, SetSystem, crossing_number
from .generators import make_rng

__all__ = [
    "ALGORITHMS",
    "PotentialConfig",
    "RunReport",
    "WeightState",
    "potential_threshold",
    "default_w",
    "default_d_candidates",
    "partition",
    "search_d",
]

ALGORITHMS = ("greedy", "minweight", "partatonce")

# sample slots for the PartAtOnce reduction; fixed so that results do not
# depend on the worker count
SAMPLE_SLOTS = 16


@dataclass(frozen=True)
class PotentialConfig:
    d: float = 2.0
    mode: str = "practical"
    t: int | None = None

    def __post_init__(self):
        if not self.d >= 1:
            raise ValueError(f"d must be at least 1, got {self.d}")
        if self.mode not in ("practical", "theoretical"):
            raise ValueError(f"mode must be 'practical' or 'theoretical', got {self.mode!r}")


def potential_threshold(k: int, cfg: PotentialConfig, sum_pi: float, n0: int, i: int = 1) -> float:
    """Weight budget for a part prefix of ``k`` elements.

    Practical: ``2 k^(1/d) sum_pi / n0^(1/d)``.  Theoretical: ``i`` times the
    practical value for the ``i``-th part (1-based).
    """
    base = 2.0 * (k / n0) ** (1.0 / cfg.d) * sum_pi
    return base * i if cfg.mode == "theoretical" else base


@dataclass
class RunReport:
    kappa: int
    violations_practical: list[int]
    violations_theoretical: list[int]
    runtime_s: float
    algo: str
    seed: int
    params: dict = field(default_factory=dict)
    exponents: np.ndarray | None = None

    @property
    def total_practical(self) -> int:
        return int(sum(self.violations_practical))

    @property
    def total_theoretical(self) -> int:
        return int(sum(self.violations_theoretical))


class WeightState:
    """Mutable bookkeeping for building one part at a time.

    ``omega[x]`` is the weight of ranges that cross the pair ``{x0, x}`` but
    not the current prefix; assigned elements hold ``inf``.  For ``greedy`` some deductions may sit in
    ``pending`` (newly crossing ranges whose weight has not been removed from
    ``omega`` yet); :meth:`current_omega` applies them.
    """

    def __init__(self, system: SetSystem, threads: int = 1):
        self.system = system
        self.n = system.n
        self.m = system.m
        self._inc = system.incidence
        self._mat = system.incidence.astype(np.float64)
        self.exponents = np.zeros(self.m, dtype=np.int64)
        self.remaining = np.ones(self.n, dtype=bool)
        self.part_of = np.full(self.n, -1, dtype=np.int64)
        self.threads = max(1, int(threads))
        self.part_index = 0
        self._reset_part()

    # -- weights -------------------------------------------------------
    def scaled_pi(self) -> np.ndarray:
        if self.m == 0:
            return np.zeros(0)
        return np.exp2(self.exponents - self.exponents.max()).astype(np.float64)

    def _edge_weights(self, coef: np.ndarray, rows: np.ndarray | None = None) -> np.ndarray:
        """Per element ``x``: sum of ``coef[F]`` over ranges crossing ``{x0, x}``.

        A range holding ``x0`` crosses the pair iff it misses ``x``; a range
        missing ``x0`` crosses it iff it holds ``x``.
        """
        if rows is None:
            in0 = self._inc[:, self.x0]
            mat = self._mat
        else:
            in0 = self._inc[rows, self.x0]
            mat = self._mat[rows]
        if coef.size == 0:
            return np.zeros(self.n)
        signed = np.where(in0, -coef, coef)
        return coef[in0].sum() + signed @ mat

    # -- part lifecycle -------------------------------------------------
    def _reset_part(self):
        self.x0 = -1
        self.part: list[int] = []
        self.omega = np.where(self.remaining, 0.0, np.inf)
        self.pi = self.scaled_pi()
        self.sum_pi = float(self.pi.sum())
        self.member_count = np.zeros(self.m, dtype=np.int64)
        self.crossed = np.zeros(self.m, dtype=bool)
        self.cost = 0.0
        self.n0 = int(self.remaining.sum())
        self.pending: deque[int] = deque()
        self.viol_practical = 0
        self.viol_theoretical = 0

    def _start(self, rng: np.random.Generator) -> int:
        rem = np.flatnonzero(self.remaining)
        if rem.size == 0:
            raise RuntimeError("no unassigned elements left to start a part")
        self.part_index += 1
        self._reset_part()
        x0 = int(rem[rng.integers(rem.size)])
        self.x0 = x0
        self.part = [x0]
        self.remaining[x0] = False
        self.omega[x0] = np.inf
        self.member_count += self._inc[:, x0]
        return x0

    def begin_part(self, rng: np.random.Generator) -> int:
        """Pick a uniform start element and initialize every element's cost."""
        x0 = self._start(rng)
        if self.m:
            self.omega = np.where(self.remaining, self._edge_weights(self.pi), np.inf)
        return x0

    def current_omega(self) -> np.ndarray:
        """``omega`` with every pending deduction applied (remaining elements only)."""
        om = self.omega.copy()
        if self.pending:
            rows = np.fromiter(self.pending, dtype=np.int64)
            om -= self._edge_weights(self.pi[rows], rows)
        om[~self.remaining] = np.nan
        return om

    def closed_form_omega(self) -> np.ndarray:
        """From-scratch costs: ``sum_F pi(F) I({x0,x},F) (1 - I(prefix,F))``."""
        inc = self._inc
        prefix = np.asarray(self.part)
        pin = inc[:, prefix]
        prefix_crossed = pin.any(axis=1) & ~pin.all(axis=1)
        edge = inc != inc[:, [self.x0]]
        om = (self.pi * ~prefix_crossed) @ edge.astype(np.float64)
        om[~self.remaining] = np.nan
        return om

    def threshold(self, k: int, cfg: PotentialConfig, mode: str | None = None) -> float:
        mode = mode or cfg.mode
        i = self.part_index if mode == "theoretical" else 1
        return potential_threshold(k, PotentialConfig(cfg.d, "practical"), self.sum_pi, self.n0) * i

    def _fits_somewhere(self, thr: float, stale_min: float) -> bool:
        # stale costs only overestimate, so an exact check is needed only on failure
        if self.cost + stale_min <= thr:
            return True
        return bool(self.pending) and self.cost + float(np.nanmin(self.current_omega())) <= thr

    def _record_violations(self, k: int, cfg: PotentialConfig, stale_min: float):
        self.viol_practical += not self._fits_somewhere(self.threshold(k, cfg, "practical"), stale_min)
        self.viol_theoretical += not self._fits_somewhere(self.threshold(k, cfg, "theoretical"), stale_min)

    def _add(self, y: int, cost_y: float, lazy: bool):
        """Move ``y`` into the part and retire ranges that now cross it."""
        if not self.remaining[y]:
            raise RuntimeError("no unassigned elements left to extend the part")
        self.remaining[y] = False
        self.omega[y] = np.inf
        self.part.append(y)
        self.cost += cost_y
        if self.m == 0:
            return
        iny = self._inc[:, y]
        self.member_count += iny
        new = np.flatnonzero(~self.crossed & (iny != self._inc[:, self.x0]))
        if new.size == 0:
            return
        self.crossed[new] = True
        if lazy:
            self.pending.extend(new.tolist())
        else:
            self.omega -= self._edge_weights(self.pi[new], new)

    def _drain_one(self):
        f = self.pending.popleft()
        rows = np.array([f])
        self.omega -= self._edge_weights(self.pi[rows], rows)

    def _cost_of(self, y: int) -> float:
        c = self.omega[y]
        if self.pending:
            rows = np.fromiter(self.pending, dtype=np.int64)
            in0 = self._inc[rows, self.x0]
            c -= self.pi[rows][in0 != self._inc[rows, y]].sum()
        return float(c)

    def extend_part_greedy(self, cfg: PotentialConfig) -> int:
        """Add the first element (index order) whose cost fits the budget.

        Pending deductions are applied one range at a time only while no
        candidate fits.  If none fits after the queue drains, the step is a
        violation and the minimum-cost element is added.
        """
        k = len(self.part) + 1
        self._record_violations(k, cfg, float(self.omega.min()))
        thr = self.threshold(k, cfg)
        while True:
            ok = np.flatnonzero(self.cost + self.omega <= thr)
            if ok.size:
                y = int(ok[0])
                break
            if self.pending:
                self._drain_one()
                continue
            y = int(np.argmin(self.omega))
            break
        self._add(y, self._cost_of(y), lazy=True)
        return y

    def extend_part_minweight(self, cfg: PotentialConfig) -> int:
        """Add the minimum-cost element, ties to the smallest index."""
        k = len(self.part) + 1
        y = int(np.argmin(self.omega))
        self._record_violations(k, cfg, float(self.omega[y]))
        self._add(y, float(self.omega[y]), lazy=False)
        return y

    def build_part_at_once(self, w: int, rng: np.random.Generator, size: int) -> list[int]:
        """Start element plus the ``size - 1`` cheapest under sampled costs.

        ``w`` ranges are drawn with probability proportional to weight; each
        draw of ``S`` adds ``pi(S)`` to every element ``x`` with ``S``
        crossing ``{x0, x}``.  Draws are split over fixed slots whose partial
        sums are combined in slot order, so the worker count does not change
        the result.
        """
        if w < 1:
            raise ValueError(f"sample count w must be at least 1, got {w}")
        x0 = self._start(rng)
        if self.m:
            samples = rng.choice(self.m, size=w, p=self.pi / self.sum_pi)
            slots = np.array_split(samples, min(SAMPLE_SLOTS, w))

            def partial(slot):
                rows, counts = np.unique(slot, return_counts=True)
                return self._edge_weights(self.pi[rows] * counts, rows)

            if self.threads > 1:
                with ThreadPoolExecutor(self.threads) as pool:
                    parts = list(pool.map(partial, slots))
            else:
                parts = [partial(s) for s in slots]
            om = np.zeros(self.n)
            for p in parts:
                om += p
            self.omega = np.where(self.remaining, om, np.inf)
        rem = np.flatnonzero(self.remaining)
        order = rem[np.argsort(self.omega[rem], kind="stable")]
        for y in order[: size - 1]:
            y = int(y)
            self.remaining[y] = False
            self.omega[y] = np.inf
            self.part.append(y)
        return list(self.part)

    def absorb_remaining(self):
        rest = np.flatnonzero(self.remaining)
        self.remaining[rest] = False
        self.part.extend(int(y) for y in rest)

    def mwu_update(self, part: Sequence[int] | None = None):
        """Finalize a part: bump the exponent of every range crossing it."""
        part = np.asarray(self.part if part is None else part, dtype=np.int64)
        self.remaining[part] = False
        self.part_of[part] = self.part_index - 1
        if self.m:
            cnt = self._inc[:, part].sum(axis=1)
            self.exponents += (cnt > 0) & (cnt < part.size)
        self.pending.clear()


def default_w(system: SetSystem, t: int) -> int:
    floor = 30 if system.family == "grid" else 100
    return max(floor, math.ceil(t / 2))


def partition(system: SetSystem, t: int, cfg: PotentialConfig | None = None, algo: str = "minweight",
              w: int | None = None, seed: int = 0, threads: int = 1) -> tuple[Partition, RunReport]:
    """Partition ``system`` into ``t`` parts.

    Parts ``1..t-1`` get ``n // t`` elements; the last part is started and
    grown like the others up to ``n // t`` and then absorbs every element
    left.  ``kappa`` in the report is recomputed from the finished
    partition, independently of the exponent bookkeeping.
    """
    n = system.n
    if not 1 <= t <= n:
        raise ValueError(f"t must lie in [1, n={n}], got {t}")
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    cfg = cfg or PotentialConfig(t=t)
    if algo == "partatonce":
        w = default_w(system, t) if w is None else w
        if w < 1:
            raise ValueError(f"sample count w must be at least 1, got {w}")
    rng = make_rng(seed)
    state = WeightState(system, threads=threads)
    q = n // t
    vp, vt = [], []
    start = time.perf_counter()
    for _ in range(t):
        if algo == "partatonce":
            state.build_part_at_once(w, rng, q)
        else:
            state.begin_part(rng)
            extend = state.extend_part_greedy if algo == "greedy" else state.extend_part_minweight
            for _k in range(2, q + 1):
                extend(cfg)
        if state.part_index == t:
            state.absorb_remaining()
        vp.append(state.viol_practical)
        vt.append(state.viol_theoretical)
        state.mwu_update()
    elapsed = time.perf_counter() - start
    part = Partition(state.part_of.copy(), t)
    kappa = crossing_number(system, part).kappa
    params = {"n": n, "m": system.m, "t": t, "d": cfg.d, "w": w if algo == "partatonce" else None,
              "mode": cfg.mode, "family": system.family}
    return part, RunReport(kappa, vp, vt, elapsed, algo, seed, params, state.exponents.copy())


def default_d_candidates(n: int) -> list[float]:
    """``max(1, round(log2 n))`` geometrically spaced values in ``[1, n]``."""
    k = max(1, round(math.log2(n))) if n > 1 else 1
    if k == 1:
        return [1.0]
    return [float(v) for v in np.geomspace(1.0, float(n), k)]


def search_d(system: SetSystem, t: int, algo: str = "minweight", candidates: Sequence[float] | None = None,
             seed: int = 0, mode: str = "practical", w: int | None = None, threads: int = 1):
    """Run ``partition`` for each candidate ``d`` with the same seed and keep
    the lowest crossing number (ties go to the smaller ``d``)."""
    cands = sorted(default_d_candidates(system.n) if candidates is None else candidates)
    if not cands:
        raise ValueError("candidate list is empty")
    best = None
    for d in cands:
        part, rep = partition(system, t, PotentialConfig(d, mode, t), algo, w, seed, threads)
        if best is None or rep.kappa < best[2].kappa:
            best = (d, part, rep)
    return best
