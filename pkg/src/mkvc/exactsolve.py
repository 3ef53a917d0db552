"""Exact optimum oracles.

:func:`solve_exact` enumerates every subset ``T`` of the smaller side and
completes it with the best fill on the other side, which is optimal for that
``T`` because same-side vertices cover disjoint edges.  Subsets are visited in
Gray-code order and evaluated in numpy batches (one matrix product per batch
gives every residual-degree vector).  :func:`solve_naive` is a plain
all-subsets reference used to cross-check it.
"""

from __future__ import annotations

import itertools
import os
from typing import Optional, Sequence

import numpy as np

from .covermax import _fill0
from .graph import BipartiteGraph, Side, Solution, VertexRef

__all__ = [
    "DEFAULT_EXACT_CAP",
    "NAIVE_CAP",
    "ExactCapExceeded",
    "exact_cap",
    "solve_exact",
    "solve_exact_all",
    "solve_naive",
]

DEFAULT_EXACT_CAP = 20
NAIVE_CAP = 14
_BATCH_CELLS = 1 << 22


class ExactCapExceeded(RuntimeError):
    """The instance is too large for the requested exact oracle."""


def exact_cap(cap: Optional[int] = None) -> int:
    """Resolve the smaller-side cap: explicit argument, then ``MKVC_EXACT_CAP``, then 20."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("MKVC_EXACT_CAP")
    return int(env) if env else DEFAULT_EXACT_CAP


def _check_k(g: BipartiteGraph, k: int) -> None:
    if not 0 <= k <= g.n_a + g.n_b:
        raise ValueError(f"k={k} out of range 0..{g.n_a + g.n_b}")


def _enumerate(g: BipartiteGraph, ks: Sequence[int], cap: int) -> list[Solution]:
    small = Side.A if g.n_a <= g.n_b else Side.B
    other = small.other
    s, n_other = g.size(small), g.size(other)
    if s > cap:
        raise ExactCapExceeded(
            f"smaller side has {s} vertices, exact cap is {cap}; raise --exact-cap or MKVC_EXACT_CAP"
        )
    ks = np.asarray(ks, dtype=np.int64)
    deg_s = g.degrees(small).astype(np.float64)
    deg_o = g.degrees(other)
    adj = np.zeros((s, n_other), dtype=np.float64)
    ea, eb = g.edge_arrays
    if small is Side.A:
        adj[ea, eb] = 1.0
    else:
        adj[eb, ea] = 1.0
    bits = 1 << np.arange(s, dtype=np.int64)

    best_val = np.full(len(ks), -1, dtype=np.int64)
    best_mask = np.zeros(len(ks), dtype=np.int64)
    total = 1 << s
    batch = max(1, min(total, _BATCH_CELLS // (n_other + 1)))
    for start in range(0, total, batch):
        i = np.arange(start, min(total, start + batch), dtype=np.int64)
        masks = i ^ (i >> 1)
        member = ((masks[:, None] & bits) != 0).astype(np.float64)
        j = member.sum(axis=1).astype(np.int64)
        d_t = np.rint(member @ deg_s).astype(np.int64)
        resid = deg_o - np.rint(member @ adj).astype(np.int64)
        resid = -np.sort(-resid, axis=1)
        prefix = np.zeros((len(i), n_other + 1), dtype=np.int64)
        np.cumsum(resid, axis=1, out=prefix[:, 1:])
        r = ks[None, :] - j[:, None]
        ok = (r >= 0) & (r <= n_other)
        vals = d_t[:, None] + np.take_along_axis(prefix, np.clip(r, 0, n_other), axis=1)
        vals = np.where(ok, vals, -1)
        row = vals.argmax(axis=0)
        top = vals[row, np.arange(len(ks))]
        better = top > best_val
        best_val[better] = top[better]
        best_mask[better] = masks[row[better]]

    out = []
    for k, val, mask in zip(ks.tolist(), best_val.tolist(), best_mask.tolist()):
        t0 = np.array([b for b in range(s) if mask >> b & 1], dtype=np.int64)
        fill = _fill0(g, other, k - len(t0), t0)
        vertices = [VertexRef(small, int(x) + 1) for x in t0] + [VertexRef(other, int(x) + 1) for x in fill]
        sol = Solution.of(g, vertices)
        assert sol.coverage == val
        out.append(sol)
    return out


def solve_exact(g: BipartiteGraph, k: int, cap: Optional[int] = None) -> Solution:
    """Optimal k-set; exponential only in ``min(n_a, n_b)``, which must not exceed the cap."""
    _check_k(g, k)
    return _enumerate(g, [k], exact_cap(cap))[0]


def solve_exact_all(g: BipartiteGraph, cap: Optional[int] = None) -> list[Solution]:
    """``solve_exact(g, k)`` for every ``k`` in ``0..n_a + n_b`` from a single enumeration."""
    return _enumerate(g, range(g.n_a + g.n_b + 1), exact_cap(cap))


def solve_naive(g: BipartiteGraph, k: int) -> Solution:
    """Maximum coverage over all ``C(n_a + n_b, k)`` vertex subsets (``n_a + n_b <= 14``)."""
    n = g.n_a + g.n_b
    if n > NAIVE_CAP:
        raise ExactCapExceeded(f"naive oracle limited to {NAIVE_CAP} vertices, graph has {n}")
    _check_k(g, k)
    vertices = g.vertices()
    edge_bits = [(1 << (a - 1)) | (1 << (g.n_a + b - 1)) for a, b in sorted(g.edges)]
    best, best_combo = -1, ()
    for combo in itertools.combinations(range(n), k):
        chosen = 0
        for v in combo:
            chosen |= 1 << v
        covered = sum(1 for e in edge_bits if e & chosen)
        if covered > best:
            best, best_combo = covered, combo
    return Solution(frozenset(vertices[v] for v in best_combo), best)
