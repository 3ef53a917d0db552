"""Bipartite graph model, coverage counting and the ``bkvc`` text format.

Vertices are referenced 1-based within their side (``A1``, ``B3``).  Internally
everything is stored as 0-based numpy arrays: both CSR adjacency directions
plus a sorted array of ``a * n_b + b`` keys for edge membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Side",
    "VertexRef",
    "BipartiteGraph",
    "Solution",
    "GraphFormatError",
    "parse_graph",
    "write_graph",
    "read_graph",
    "save_graph",
    "coverage",
    "residual_degrees",
]


class Side(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


class VertexRef(NamedTuple):
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "VertexRef":
        return cls(Side(text[0].upper()), int(text[1:]))


class GraphFormatError(ValueError):
    """Raised by :func:`parse_graph`; ``lineno`` is 1-based (0 if not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


def _degree_order(deg: np.ndarray) -> np.ndarray:
    # descending degree, ties by ascending index
    return np.lexsort((np.arange(len(deg)), -deg))


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    perm = np.lexsort((dst, src))
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=ptr[1:])
    return ptr, dst[perm]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class BipartiteGraph:
    """Immutable simple bipartite graph between sides A (``n_a``) and B (``n_b``).

    Build one with :meth:`from_edges` (1-based pairs) or
    :meth:`from_arrays` (0-based numpy arrays, no copying of Python tuples,
    used for the large generated instances).
    """

    def __init__(self, n_a: int, n_b: int, edge_a: np.ndarray, edge_b: np.ndarray):
        if n_a < 0 or n_b < 0:
            raise ValueError("side sizes must be non-negative")
        edge_a = np.asarray(edge_a, dtype=np.int64)
        edge_b = np.asarray(edge_b, dtype=np.int64)
        if edge_a.shape != edge_b.shape or edge_a.ndim != 1:
            raise ValueError("edge arrays must be 1-d and of equal length")
        if len(edge_a) and (
            edge_a.min() < 0 or edge_a.max() >= n_a or edge_b.min() < 0 or edge_b.max() >= n_b
        ):
            raise ValueError("edge endpoint out of range")
        keys = edge_a * max(n_b, 1) + edge_b
        perm = np.argsort(keys, kind="stable")
        keys = keys[perm]
        if len(keys) > 1 and np.any(keys[1:] == keys[:-1]):
            raise ValueError("duplicate edge")
        self.n_a = int(n_a)
        self.n_b = int(n_b)
        self._keys = _frozen(keys)
        self._edge_a = _frozen(edge_a[perm])
        self._edge_b = _frozen(edge_b[perm])
        self.m = int(len(keys))

        self.deg_a = _frozen(np.bincount(self._edge_a, minlength=self.n_a).astype(np.int64))
        self.deg_b = _frozen(np.bincount(self._edge_b, minlength=self.n_b).astype(np.int64))
        self._order0 = {
            Side.A: _frozen(_degree_order(self.deg_a)),
            Side.B: _frozen(_degree_order(self.deg_b)),
        }
        ptr_a, adj_a = _csr(self.n_a, self._edge_a, self._edge_b)
        ptr_b, adj_b = _csr(self.n_b, self._edge_b, self._edge_a)
        self._ptr = {Side.A: _frozen(ptr_a), Side.B: _frozen(ptr_b)}
        self._adj = {Side.A: _frozen(adj_a), Side.B: _frozen(adj_b)}

    @classmethod
    def from_edges(cls, n_a: int, n_b: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        pairs = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls(n_a, n_b, pairs[:, 0] - 1, pairs[:, 1] - 1)

    @classmethod
    def from_arrays(cls, n_a: int, n_b: int, edge_a: np.ndarray, edge_b: np.ndarray) -> "BipartiteGraph":
        return cls(n_a, n_b, edge_a, edge_b)

    def __repr__(self) -> str:
        return f"BipartiteGraph(n_a={self.n_a}, n_b={self.n_b}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_a == other.n_a
            and self.n_b == other.n_b
            and np.array_equal(self._keys, other._keys)
        )

    __hash__ = None  # type: ignore[assignment]

    # -- per-side accessors -------------------------------------------------

    def size(self, side: Side) -> int:
        return self.n_a if side is Side.A else self.n_b

    def degrees(self, side: Side) -> np.ndarray:
        """Degree array of one side; entry ``i`` belongs to vertex ``i + 1``."""
        return self.deg_a if side is Side.A else self.deg_b

    def order0(self, side: Side) -> np.ndarray:
        """0-based vertex positions sorted by degree descending, index ascending."""
        return self._order0[side]

    @property
    def order_a(self) -> np.ndarray:
        return self._order0[Side.A] + 1

    @property
    def order_b(self) -> np.ndarray:
        return self._order0[Side.B] + 1

    def neighbors0(self, side: Side, i0: int) -> np.ndarray:
        ptr = self._ptr[side]
        return self._adj[side][ptr[i0]:ptr[i0 + 1]]

    def neighbors(self, v: VertexRef) -> list[VertexRef]:
        self.check_ref(v)
        other = v.side.other
        return [VertexRef(other, int(j) + 1) for j in self.neighbors0(v.side, v.index - 1)]

    def csr(self, side: Side) -> tuple[np.ndarray, np.ndarray]:
        return self._ptr[side], self._adj[side]

    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based ``(a, b)`` endpoint arrays, sorted by ``(a, b)``."""
        return self._edge_a, self._edge_b

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        """All edges as 1-based ``(a, b)`` pairs."""
        return frozenset(zip((self._edge_a + 1).tolist(), (self._edge_b + 1).tolist()))

    def has_edge(self, a: int, b: int) -> bool:
        if not (1 <= a <= self.n_a and 1 <= b <= self.n_b):
            return False
        key = (a - 1) * max(self.n_b, 1) + (b - 1)
        pos = np.searchsorted(self._keys, key)
        return bool(pos < self.m and self._keys[pos] == key)

    def check_ref(self, v: VertexRef) -> None:
        side = Side(v.side)
        if not 1 <= v.index <= self.size(side):
            raise IndexError(f"vertex {side.value}{v.index} out of range 1..{self.size(side)}")

    def vertices(self) -> list[VertexRef]:
        return [VertexRef(Side.A, i) for i in range(1, self.n_a + 1)] + [
            VertexRef(Side.B, i) for i in range(1, self.n_b + 1)
        ]


def _split(g: BipartiteGraph, s: Iterable[VertexRef]) -> tuple[np.ndarray, np.ndarray]:
    """Boolean membership masks on both sides, validating every ref."""
    in_a = np.zeros(g.n_a, dtype=bool)
    in_b = np.zeros(g.n_b, dtype=bool)
    for v in s:
        g.check_ref(v)
        (in_a if Side(v.side) is Side.A else in_b)[v.index - 1] = True
    return in_a, in_b


def coverage_masks(g: BipartiteGraph, in_a: np.ndarray, in_b: np.ndarray) -> int:
    ea, eb = g.edge_arrays
    both = int(np.count_nonzero(in_a[ea] & in_b[eb]))
    return int(g.deg_a[in_a].sum() + g.deg_b[in_b].sum()) - both


def coverage(g: BipartiteGraph, s: Iterable[VertexRef]) -> int:
    """Number of distinct edges with at least one endpoint in ``s``."""
    return coverage_masks(g, *_split(g, s))


def residual_degrees(g: BipartiteGraph, side: Side, fixed: Iterable[VertexRef]) -> np.ndarray:
    """Per-vertex count of edges on ``side`` whose other endpoint is not in ``fixed``.

    ``fixed`` must lie entirely on the opposite side.
    """
    side = Side(side)
    fixed = list(fixed)
    for v in fixed:
        if Side(v.side) is side:
            raise ValueError(f"fixed vertex {v} lies on side {side.value}, expected {side.other.value}")
        g.check_ref(v)
    fixed0 = np.array([v.index - 1 for v in fixed], dtype=np.int64)
    return residual_degrees0(g, side, fixed0)


def residual_degrees0(g: BipartiteGraph, side: Side, fixed0: np.ndarray) -> np.ndarray:
    other = side.other
    deg = g.degrees(side)
    if len(fixed0) == 0:
        return deg.copy()
    ptr, adj = g.csr(other)
    mask = np.zeros(g.size(other), dtype=bool)
    mask[fixed0] = True
    counts = np.diff(ptr)
    src_in_fixed = np.repeat(mask, counts)
    hit = np.bincount(adj[src_in_fixed], minlength=g.size(side))
    return deg - hit


@dataclass(frozen=True)
class Solution:
    """A vertex set together with its exact coverage."""

    vertices: frozenset[VertexRef]
    coverage: int

    @classmethod
    def of(cls, g: BipartiteGraph, vertices: Iterable[VertexRef]) -> "Solution":
        vs = frozenset(VertexRef(Side(v.side), int(v.index)) for v in vertices)
        return cls(vs, coverage(g, vs))

    def sorted(self) -> list[VertexRef]:
        return sorted(self.vertices)

    def labels(self) -> list[str]:
        return [str(v) for v in self.sorted()]

    def __len__(self) -> int:
        return len(self.vertices)


# -- text format ------------------------------------------------------------


def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"malformed {what}: non-integer field", lineno) from None


def parse_graph(text: str) -> BipartiteGraph:
    """Parse a ``bkvc`` document (``p bkvc nA nB m`` header, ``e a b`` lines)."""
    header = None
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise GraphFormatError("malformed header: second problem line", lineno)
            if len(tokens) != 5 or tokens[1] != "bkvc":
                raise GraphFormatError("malformed header: expected 'p bkvc <nA> <nB> <m>'", lineno)
            n_a, n_b, m = _ints(tokens[2:], lineno, "header")
            if min(n_a, n_b, m) < 0:
                raise GraphFormatError("malformed header: negative count", lineno)
            header = (n_a, n_b, m, lineno)
        elif tag == "e":
            if header is None:
                raise GraphFormatError("malformed header: edge line before 'p bkvc' header", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("malformed edge line: expected 'e <a> <b>'", lineno)
            a, b = _ints(tokens[1:], lineno, "edge line")
            if not 1 <= a <= header[0]:
                raise GraphFormatError(f"vertex index out of range: a={a} not in 1..{header[0]}", lineno)
            if not 1 <= b <= header[1]:
                raise GraphFormatError(f"vertex index out of range: b={b} not in 1..{header[1]}", lineno)
            if (a, b) in seen:
                raise GraphFormatError(f"duplicate edge ({a}, {b}), first seen on line {seen[a, b]}", lineno)
            seen[a, b] = lineno
        else:
            raise GraphFormatError(f"unknown record type {tag!r}", lineno)
    if header is None:
        raise GraphFormatError("malformed header: missing 'p bkvc' line")
    n_a, n_b, m, hline = header
    if len(seen) != m:
        raise GraphFormatError(f"edge count mismatch: header declares m={m}, found {len(seen)} edge lines", hline)
    return BipartiteGraph.from_edges(n_a, n_b, seen.keys())


def write_graph(g: BipartiteGraph, comments: Iterable[str] = ()) -> str:
    """Canonical text: optional comments, header, edges sorted by ``(a, b)``."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p bkvc {g.n_a} {g.n_b} {g.m}")
    ea, eb = g.edge_arrays
    lines.extend(f"e {a} {b}" for a, b in zip((ea + 1).tolist(), (eb + 1).tolist()))
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> BipartiteGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def save_graph(g: BipartiteGraph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(write_graph(g, comments), encoding="utf-8")
