"""Plain-text formats for set systems and partitions.

Set system::

    # lowcross setsystem v1
    # family=grid                  (scalar labels, optional)
    n m
    k i_1 ... i_k                  (one line per range, indices increasing)

Partition::

    # lowcross partition v1
    n t
    p_0 p_1 ... p_{n-1}

Files ending in ``.gz`` are transparently gzip-compressed.
"""

from __future__ import annotations

import gzip
import io
from typing import IO

import numpy as np

from .core import Partition, SetSystem

__all__ = [
    "FormatError",
    "write_setsystem",
    "read_setsystem",
    "write_partition",
    "read_partition",
    "save_setsystem",
    "load_setsystem",
    "save_partition",
    "load_partition",
]

SETSYSTEM_HEADER = "# lowcross setsystem v1"
PARTITION_HEADER = "# lowcross partition v1"


class FormatError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno


def _content_lines(stream: IO[str], labels: dict | None = None):
    for lineno, line in enumerate(stream, start=1):
        body = line.strip()
        if body.startswith("#"):
            key, sep, value = body[1:].strip().partition("=")
            if labels is not None and sep and key.isidentifier():
                labels[key] = value
            continue
        yield lineno, body


def _ints(lineno: int, body: str) -> list[int]:
    try:
        return [int(tok) for tok in body.split()]
    except ValueError:
        raise FormatError(lineno, f"expected integers, got {body!r}") from None


def write_setsystem(system: SetSystem, stream: IO[str]) -> None:
    stream.write(f"{SETSYSTEM_HEADER}\n")
    for key, value in system.labels.items():
        if isinstance(value, (str, int, float)) and "\n" not in str(value):
            stream.write(f"# {key}={value}\n")
    stream.write(f"{system.n} {system.m}\n")
    for r in range(system.m):
        idx = system.members(r)
        stream.write(" ".join(map(str, [idx.size, *idx.tolist()])) + "\n")


def read_setsystem(stream: IO[str]) -> SetSystem:
    """Parse a set system; ``# key=value`` comments become string labels."""
    labels: dict = {}
    lines = _content_lines(stream, labels)
    try:
        lineno, body = next(lines)
    except StopIteration:
        raise FormatError(0, "missing 'n m' header") from None
    head = _ints(lineno, body)
    if len(head) != 2 or head[0] < 1 or head[1] < 0:
        raise FormatError(lineno, f"header must be 'n m' with n >= 1, m >= 0, got {body!r}")
    n, m = head
    inc = np.zeros((m, n), dtype=bool)
    count = 0
    for lineno, body in lines:
        if not body:
            continue
        if count == m:
            raise FormatError(lineno, f"more than {m} range lines")
        vals = _ints(lineno, body)
        k, idx = vals[0], np.array(vals[1:], dtype=np.int64)
        if k != idx.size:
            raise FormatError(lineno, f"range size {k} does not match {idx.size} indices")
        if idx.size and (idx[0] < 0 or idx[-1] >= n):
            raise FormatError(lineno, f"index outside [0, {n})")
        if idx.size > 1 and np.any(np.diff(idx) <= 0):
            raise FormatError(lineno, "indices must be strictly increasing")
        inc[count, idx] = True
        count += 1
    if count != m:
        raise FormatError(lineno if m else 1, f"header announces {m} ranges, found {count}")
    return SetSystem(n, inc, labels)


def write_partition(part: Partition, stream: IO[str]) -> None:
    stream.write(f"{PARTITION_HEADER}\n{part.n} {part.t}\n")
    stream.write(" ".join(map(str, part.part_of.tolist())) + "\n")


def read_partition(stream: IO[str]) -> Partition:
    lines = [(ln, b) for ln, b in _content_lines(stream) if b]
    if not lines:
        raise FormatError(0, "missing 'n t' header")
    lineno, body = lines[0]
    head = _ints(lineno, body)
    if len(head) != 2 or head[0] < 1 or head[1] < 1:
        raise FormatError(lineno, f"header must be 'n t' with n, t >= 1, got {body!r}")
    n, t = head
    if len(lines) != 2:
        raise FormatError(lines[-1][0], "expected exactly one line of part ids")
    lineno, body = lines[1]
    ids = np.array(_ints(lineno, body), dtype=np.int64)
    if ids.size != n:
        raise FormatError(lineno, f"expected {n} part ids, found {ids.size}")
    bad = np.flatnonzero((ids < 0) | (ids >= t))
    if bad.size:
        raise FormatError(lineno, f"part id {ids[bad[0]]} of element {bad[0]} outside [0, {t})")
    return Partition(ids, t)


def _open(path: str, mode: str):
    if str(path).endswith(".gz"):
        return io.TextIOWrapper(gzip.GzipFile(path, mode[0] + "b", mtime=0), encoding="ascii")
    return open(path, mode, encoding="ascii")


def save_setsystem(system: SetSystem, path: str) -> None:
    with _open(path, "w") as fh:
        write_setsystem(system, fh)


def load_setsystem(path: str) -> SetSystem:
    with _open(path, "r") as fh:
        return read_setsystem(fh)


def save_partition(part: Partition, path: str) -> None:
    with _open(path, "w") as fh:
        write_partition(part, fh)


def load_partition(path: str) -> Partition:
    with _open(path, "r") as fh:
        return read_partition(fh)
