"""Set systems, partitions and crossing arithmetic.

A set system is stored as a dense boolean incidence matrix of shape
``(m, n)``: row ``F`` is the membership mask of range ``F`` over the
elements ``0..n-1``.  Element and range ids are dense zero-based integers;
anything else (coordinates, vertex names, generator parameters) lives in
``SetSystem.labels``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "SetSystem",
    "Partition",
    "CrossingReport",
    "crosses",
    "crossing_number",
    "part_range_counts",
    "validate_partition",
    "size_law_feasible",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SetSystem:
    """Finite set system ``(X, F)`` with ``|X| = n`` and ``|F| = m``."""

    n: int
    incidence: np.ndarray
    labels: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        inc = np.asarray(self.incidence, dtype=bool)
        if inc.ndim != 2:
            inc = inc.reshape(-1, self.n)
        if self.n < 1:
            raise ValueError(f"a set system needs at least one element, got n={self.n}")
        if inc.shape[1] != self.n:
            raise ValueError(f"incidence has {inc.shape[1]} columns, expected n={self.n}")
        object.__setattr__(self, "incidence", _frozen(inc))
        object.__setattr__(self, "labels", dict(self.labels))

    @classmethod
    def from_ranges(cls, n: int, ranges: Iterable[Iterable[int]], labels=None) -> "SetSystem":
        """Build from an iterable of ranges, each an iterable of element ids."""
        rows = []
        for j, r in enumerate(ranges):
            idx = np.fromiter(r, dtype=np.int64)
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise ValueError(f"range {j} references an element outside [0, {n})")
            row = np.zeros(n, dtype=bool)
            row[idx] = True
            rows.append(row)
        inc = np.array(rows, dtype=bool).reshape(len(rows), n)
        return cls(n, inc, labels or {})

    @property
    def m(self) -> int:
        return self.incidence.shape[0]

    @property
    def family(self) -> str:
        return str(self.labels.get("family", "custom"))

    def members(self, r: int) -> np.ndarray:
        return np.flatnonzero(self.incidence[r])

    def contains(self, r: int, x: int) -> bool:
        return bool(self.incidence[r, x])

    def range_sizes(self) -> np.ndarray:
        return self.incidence.sum(axis=1)

    def ranges(self) -> list[np.ndarray]:
        return [self.members(r) for r in range(self.m)]

    def same_incidence(self, other: "SetSystem") -> bool:
        return self.n == other.n and np.array_equal(self.incidence, other.incidence)

    def __repr__(self):
        return f"SetSystem(n={self.n}, m={self.m}, family={self.family!r})"


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of every element to one of ``t`` parts.

    ``part_of[x] == -1`` marks an unassigned element; such a partition is
    representable so that :func:`validate_partition` can report it.
    """

    part_of: np.ndarray
    t: int

    def __post_init__(self):
        p = np.asarray(self.part_of, dtype=np.int64).ravel()
        if self.t < 1:
            raise ValueError(f"part count must be positive, got t={self.t}")
        if p.size and (p.max() >= self.t or p.min() < -1):
            raise ValueError(f"part ids must lie in [0, {self.t})")
        object.__setattr__(self, "part_of", _frozen(p))

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]], n: int) -> "Partition":
        """Build from explicit parts; raises if two parts share an element."""
        part_of = np.full(n, -1, dtype=np.int64)
        for i, part in enumerate(parts):
            idx = np.fromiter(part, dtype=np.int64)
            if np.any(part_of[idx] != -1) or np.unique(idx).size != idx.size:
                raise ValueError(f"part {i} overlaps an earlier part")
            part_of[idx] = i
        return cls(part_of, len(parts))

    @property
    def n(self) -> int:
        return self.part_of.size

    @property
    def part_sizes(self) -> np.ndarray:
        return np.bincount(self.part_of[self.part_of >= 0], minlength=self.t)

    def parts(self) -> list[np.ndarray]:
        order = np.argsort(self.part_of, kind="stable")
        keyed = self.part_of[order]
        return [order[keyed == i] for i in range(self.t)]

    def same_as(self, other: "Partition") -> bool:
        return self.t == other.t and np.array_equal(self.part_of, other.part_of)

    def __repr__(self):
        return f"Partition(n={self.n}, t={self.t})"


@dataclass(frozen=True)
class CrossingReport:
    kappa: int
    per_range: np.ndarray
    argmax_range: int


def _as_index_array(subset, n: int) -> np.ndarray:
    idx = np.asarray(list(subset) if not isinstance(subset, np.ndarray) else subset, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"element index outside [0, {n})")
    return idx


def crosses(r: int, subset, system: SetSystem) -> int:
    """Return 1 iff range ``r`` contains some but not all elements of ``subset``."""
    if not 0 <= r < system.m:
        raise ValueError(f"range index {r} outside [0, {system.m})")
    idx = _as_index_array(subset, system.n)
    if idx.size == 0:
        raise ValueError("subset must be nonempty")
    inside = system.incidence[r, idx]
    return int(inside.any() and not inside.all())


def part_range_counts(system: SetSystem, partition: Partition) -> np.ndarray:
    """``(m, t)`` matrix of ``|F ∩ P_i|``."""
    order = np.argsort(partition.part_of, kind="stable")
    sizes = partition.part_sizes
    out = np.zeros((system.m, partition.t), dtype=np.int64)
    nonempty = np.flatnonzero(sizes)
    if system.m == 0 or nonempty.size == 0:
        return out
    assigned = order[partition.part_of[order] >= 0]
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))[nonempty]
    cols = system.incidence[:, assigned].astype(np.int64)
    out[:, nonempty] = np.add.reduceat(cols, starts, axis=1)
    return out


def crossing_number(system: SetSystem, partition: Partition) -> CrossingReport:
    if partition.n != system.n:
        raise ValueError(f"partition covers {partition.n} elements, system has {system.n}")
    counts = part_range_counts(system, partition)
    crossed = (counts > 0) & (counts < partition.part_sizes[None, :])
    per_range = crossed.sum(axis=1)
    if per_range.size == 0:
        return CrossingReport(0, per_range, -1)
    arg = int(np.argmax(per_range))
    return CrossingReport(int(per_range[arg]), per_range, arg)


def size_law_feasible(n: int, t: int) -> bool:
    """Whether any partition of ``n`` elements into ``t`` parts meets the size law.

    Parts ``1..t-1`` must have ``n // t`` elements, which forces the last part
    to hold ``n - (t-1)(n // t)``; that must not exceed ``2n/t``.
    """
    q = n // t
    return t * (n - (t - 1) * q) <= 2 * n


def validate_partition(system: SetSystem, partition) -> list[str]:
    """List every violated partition condition; an empty list means valid.

    ``partition`` is a :class:`Partition` or a sequence of parts (each an
    iterable of element ids).  Sizes follow the asymmetric rule: parts
    ``1..t-1`` hold exactly ``floor(n/t)`` elements and the last part holds
    between ``n/t`` and ``2n/t``.
    """
    n = system.n
    problems: list[str] = []
    if isinstance(partition, Partition):
        if partition.n != n:
            return [f"coverage: partition has {partition.n} slots, system has {n} elements"]
        t = partition.t
        sizes = partition.part_sizes
        missing = np.flatnonzero(partition.part_of < 0)
    else:
        parts = [np.fromiter(p, dtype=np.int64) for p in partition]
        t = len(parts)
        if t == 0:
            return ["coverage: no parts"]
        seen = np.zeros(n, dtype=np.int64)
        for i, p in enumerate(parts):
            if p.size and (p.min() < 0 or p.max() >= n):
                problems.append(f"coverage: part {i} holds an element outside [0, {n})")
                p = p[(p >= 0) & (p < n)]
            np.add.at(seen, p, 1)
        sizes = np.array([p.size for p in parts])
        dup = np.flatnonzero(seen > 1)
        if dup.size:
            problems.append(f"disjointness: {dup.size} element(s) in more than one part, e.g. {dup[0]}")
        missing = np.flatnonzero(seen == 0)
    if missing.size:
        problems.append(f"coverage: {missing.size} element(s) assigned to no part, e.g. {missing[0]}")
    q = n // t
    bad = [i for i in range(t - 1) if sizes[i] != q]
    if bad:
        problems.append(
            f"condition 1: parts {bad[:5]}{'...' if len(bad) > 5 else ''} "
            f"do not have size floor(n/t) = {q}"
        )
    last = int(sizes[t - 1])
    if not (n <= t * last <= 2 * n):
        problems.append(f"condition 2: last part has size {last}, outside [n/t, 2n/t] = [{n / t:.3g}, {2 * n / t:.3g}]")
    return problems
