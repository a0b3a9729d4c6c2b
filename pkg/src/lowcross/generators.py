"""Set-system families: grids, random halfspaces, graph neighborhoods,
projective planes and disks over concentric circles.

Every randomized generator takes an explicit ``seed`` and draws from
``numpy.random.Generator(PCG64(seed))``; identical arguments give
bit-identical systems.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
import numpy as np
import scipy.sparse as sp

from .core import SetSystem

__all__ = [
    "Graph",
    "GraphFormatError",
    "GenSpec",
    "FAMILIES",
    "make_rng",
    "int_root_ceil",
    "is_prime",
    "gen_grid",
    "gen_random_halfspaces",
    "gen_powerlaw_graph",
    "gen_graph_neighborhood",
    "gen_projective_plane",
    "gen_circle_disks",
    "load_graph_edgelist",
    "generate",
]


def make_rng(seed: int) -> np.random.Generator:
    if seed is None:
        raise ValueError("an explicit seed is required")
    return np.random.Generator(np.random.PCG64(int(seed) & (2**64 - 1)))


def int_root_ceil(n: int, d: int) -> int:
    """Smallest integer ``s`` with ``s**d >= n``."""
    s = max(1, int(round(n ** (1.0 / d))))
    while s**d < n:
        s += 1
    while s > 1 and (s - 1) ** d >= n:
        s -= 1
    return s


def is_prime(a: int) -> bool:
    if a < 2:
        return False
    f = 2
    while f * f <= a:
        if a % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: sp.csr_matrix

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build from an edge array; self-loops and duplicates are dropped."""
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        e = e[e[:, 0] != e[:, 1]]
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        a = sp.csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
        a.sum_duplicates()
        a.data[:] = 1
        a.eliminate_zeros()
        return cls(n, a)

    @property
    def num_edges(self) -> int:
        return self.adjacency.nnz // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[v]:a.indptr[v + 1]]

    def edges(self) -> np.ndarray:
        u = sp.triu(self.adjacency, k=1).tocoo()
        return np.column_stack([u.row, u.col])


FAMILIES = ("grid", "random-halfspaces", "graph-neighborhood", "power-law", "projective-plane", "circle-disks")


@dataclass(frozen=True)
class GenSpec:
    """Generator parameters; only the ones relevant to ``family`` are read."""

    family: str
    n: int | None = None
    d: int | None = None
    m: int | None = None
    beta: float | None = None
    r: int = 1
    a: int | None = None
    circles: int | None = None
    seed: int = 0
    edgelist: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.a is not None and self.family != "projective-plane":
            raise ValueError("order is only meaningful for the projective-plane family")
        need = {
            "grid": ("n", "d"),
            "random-halfspaces": ("n", "d", "m"),
            "power-law": ("n", "beta"),
            "graph-neighborhood": ("edgelist",),
            "projective-plane": ("a",),
            "circle-disks": ("n", "circles", "m"),
        }[self.family]
        missing = [k for k in need if getattr(self, k) is None]
        if missing:
            raise ValueError(f"family {self.family!r} needs parameter(s) {missing}")


def _check_counts(**kw):
    for k, v in kw.items():
        if v is None or int(v) < 1:
            raise ValueError(f"{k} must be a positive integer, got {v!r}")


def gen_grid(n: int, d: int, seed: int) -> SetSystem:
    """Uniform points in ``[0,1]^d`` with axis-orthogonal nested halfspaces.

    With ``s = ceil(n ** (1/d))`` levels per axis, range ``(j, q)`` for
    ``q = 1..s`` is ``{p : p[j] >= q / (s + 1)}``; ranges are ordered axis
    by axis, level ascending.
    """
    _check_counts(n=n, d=d)
    rng = make_rng(seed)
    pts = rng.random((n, d))
    s = int_root_ceil(n, d)
    thresholds = np.arange(1, s + 1) / (s + 1)
    inc = (pts.T[:, None, :] >= thresholds[None, :, None]).reshape(d * s, n)
    return SetSystem(n, inc, {"family": "grid", "n": n, "d": d, "seed": seed, "points": pts, "levels": s})


def halfspace_ranges(points: np.ndarray, normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Incidence of ``{p : <normal, p> >= offset}`` for each halfspace."""
    return (normals @ points.T) >= offsets[:, None]


def gen_random_halfspaces(n: int, d: int, m: int, seed: int) -> SetSystem:
    """Uniform points; halfspaces with uniform unit normals whose boundary
    passes through a fresh uniform point of the cube."""
    _check_counts(n=n, d=d, m=m)
    rng = make_rng(seed)
    pts = rng.random((n, d))
    normals = rng.standard_normal((m, d))
    norms = np.linalg.norm(normals, axis=1)
    normals /= np.where(norms > 0, norms, 1.0)[:, None]
    anchors = rng.random((m, d))
    offsets = np.einsum("ij,ij->i", normals, anchors)
    inc = halfspace_ranges(pts, normals, offsets)
    labels = {"family": "random-halfspaces", "n": n, "d": d, "m": m, "seed": seed,
              "points": pts, "normals": normals, "offsets": offsets}
    return SetSystem(n, inc, labels)


def powerlaw_degree_pmf(n: int, beta: float) -> np.ndarray:
    """Probabilities of degrees ``1..n-1`` proportional to ``c ** -beta``."""
    c = np.arange(1, n, dtype=np.float64)
    logw = -beta * np.log(c)
    w = np.exp(logw - logw.max())
    return w / w.sum()


def gen_powerlaw_graph(n: int, beta: float, seed: int) -> Graph:
    """Configuration-model graph with i.i.d. power-law target degrees.

    Stubs are paired uniformly at random; an odd stub total drops one stub.
    Self-loops and parallel edges are removed afterwards, so realized
    degrees can fall below their targets.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not beta > 1:
        raise ValueError(f"beta must exceed 1, got {beta}")
    rng = make_rng(seed)
    deg = rng.choice(np.arange(1, n), size=n, p=powerlaw_degree_pmf(n, beta))
    stubs = np.repeat(np.arange(n), deg)
    rng.shuffle(stubs)
    if stubs.size % 2:
        stubs = stubs[:-1]
    return Graph.from_edges(n, stubs.reshape(-1, 2))


def gen_graph_neighborhood(g: Graph, r: int, labels=None) -> SetSystem:
    """One range per vertex: every vertex within hop distance ``r``.

    Level-synchronous BFS from all sources at once: the reach matrix grows
    by one hop per round through a sparse product with the adjacency.
    """
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    n = g.n
    reach = sp.identity(n, dtype=np.int8, format="csr")
    hop = (g.adjacency + sp.identity(n, dtype=np.int8, format="csr")).astype(np.int8)
    for _ in range(r):
        nxt = (reach @ hop).astype(bool).astype(np.int8)
        if nxt.nnz == reach.nnz:
            break
        reach = nxt.tocsr()
    inc = reach.toarray().astype(bool)
    lab = {"family": "graph-neighborhood", "n": n, "r": r}
    lab.update(labels or {})
    return SetSystem(n, inc, lab)


def projective_points(a: int) -> np.ndarray:
    """Normalized nonzero triples of GF(a)^3 (first nonzero coordinate 1)."""
    ys, zs = np.meshgrid(np.arange(a), np.arange(a), indexing="ij")
    block1 = np.column_stack([np.ones(a * a, dtype=np.int64), ys.ravel(), zs.ravel()])
    block2 = np.column_stack([np.zeros(a, dtype=np.int64), np.ones(a, dtype=np.int64), np.arange(a)])
    block3 = np.array([[0, 0, 1]], dtype=np.int64)
    return np.vstack([block1, block2, block3])


def gen_projective_plane(a: int) -> SetSystem:
    """Points and lines of the projective plane over GF(a), ``a`` prime.

    Lines use the same normalized triples as points; point ``x`` lies on
    line ``L`` iff ``x . L == 0 (mod a)``.
    """
    if not is_prime(int(a)):
        raise ValueError(f"projective planes are only built for prime orders, got {a}")
    pts = projective_points(a)
    inc = (pts @ pts.T) % a == 0
    return SetSystem(pts.shape[0], inc, {"family": "projective-plane", "a": a, "points": pts})


def disk_ranges(points: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Incidence of open disks: ``|p - c|^2 < r^2``."""
    diff = points[None, :, :] - centers[:, None, :]
    return np.einsum("mnk,mnk->mn", diff, diff) < (np.asarray(radii)[:, None] ** 2)


def gen_circle_disks(n: int, circles: int, m: int, seed: int) -> SetSystem:
    """Points on concentric circles of radii ``q/circles``; ranges are disks
    with center uniform in ``[-1,1]^2`` and radius uniform in ``(0, 1]``."""
    _check_counts(n=n, circles=circles, m=m)
    rng = make_rng(seed)
    per = np.full(circles, n // circles)
    per[: n % circles] += 1
    radius = np.repeat(np.arange(1, circles + 1) / circles, per)
    theta = rng.uniform(0.0, 2 * np.pi, n)
    pts = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    centers = rng.uniform(-1.0, 1.0, (m, 2))
    radii = 1.0 - rng.random(m)
    inc = disk_ranges(pts, centers, radii)
    labels = {"family": "circle-disks", "n": n, "circles": circles, "m": m, "seed": seed,
              "points": pts, "centers": centers, "radii": radii}
    return SetSystem(n, inc, labels)


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")
        self.lineno = lineno


def load_graph_edgelist(source) -> Graph:
    """Read a SNAP-style edge list (``u v`` per line, ``#`` comments).

    Vertex labels are re-indexed densely in order of first appearance.
    ``source`` is a binary or text stream, ``bytes`` or ``str`` content.
    """
    if isinstance(source, (bytes, str)):
        source = io.BytesIO(source.encode() if isinstance(source, str) else source)
    ids: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode() if isinstance(raw, bytes) else raw
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        fields = body.split()
        if len(fields) != 2:
            raise GraphFormatError(lineno, line, "expected two vertex ids")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(lineno, line, "vertex ids must be integers") from None
        edges.append((ids.setdefault(u, len(ids)), ids.setdefault(v, len(ids))))
    return Graph.from_edges(len(ids), np.array(edges, dtype=np.int64).reshape(-1, 2))


def generate(spec: GenSpec) -> SetSystem:
    """Dispatch a :class:`GenSpec` to its generator."""
    f = spec.family
    if f == "grid":
        return gen_grid(spec.n, spec.d, spec.seed)
    if f == "random-halfspaces":
        return gen_random_halfspaces(spec.n, spec.d, spec.m, spec.seed)
    if f == "power-law":
        g = gen_powerlaw_graph(spec.n, spec.beta, spec.seed)
        return gen_graph_neighborhood(g, spec.r, {"family": "power-law", "beta": spec.beta, "seed": spec.seed})
    if f == "graph-neighborhood":
        with open(spec.edgelist, "rb") as fh:
            g = load_graph_edgelist(fh)
        return gen_graph_neighborhood(g, spec.r, {"source": spec.edgelist})
    if f == "projective-plane":
        return gen_projective_plane(spec.a)
    return gen_circle_disks(spec.n, spec.circles, spec.m, spec.seed)
