"""Five-candidate 0.7-approximation for max k-vertex cover, plus greedy.

For a split guess ``(k1, k2)`` with sides ``V1``/``V2`` the candidates are

* SOL1  - top ``k1`` of V1, then the ``k2`` best residual vertices of V2
* SOL2  - top ``k2`` of V2, then the ``k1`` best residual vertices of V1
* SOL3  - top ``k`` of V2
* SOL4a - top ``k`` of V1
* SOL4b - top ``2*k1`` of V1, then the ``k - 2*k1`` best residual vertices of V2

Every one of them has the shape "degree-prefix of length ``p`` on one side,
best fill of ``k - p`` on the other".  :func:`solve_comb07` therefore computes,
per side, the value of that shape for every ``p`` in one incremental sweep and
only materializes the winning vertex set.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .graph import BipartiteGraph, Side, Solution, VertexRef, coverage_masks, residual_degrees0

__all__ = [
    "Orientation",
    "Label",
    "SplitGuess",
    "CandidateTag",
    "top_k",
    "best_fill",
    "build_candidate",
    "candidate_solutions",
    "solve_comb07",
    "greedy_sequence",
    "solve_greedy",
]


class Orientation(str, Enum):
    A_IS_V1 = "A-is-V1"
    B_IS_V1 = "B-is-V1"

    @property
    def v1(self) -> Side:
        return Side.A if self is Orientation.A_IS_V1 else Side.B

    @property
    def v2(self) -> Side:
        return self.v1.other


class Label(str, Enum):
    SOL1 = "SOL1"
    SOL2 = "SOL2"
    SOL3 = "SOL3"
    SOL4a = "SOL4a"
    SOL4b = "SOL4b"
    GREEDY = "GREEDY"
    EXACT = "EXACT"


FIVE = (Label.SOL1, Label.SOL2, Label.SOL3, Label.SOL4a, Label.SOL4b)


@dataclass(frozen=True)
class SplitGuess:
    k1: int
    k2: int
    orientation: Orientation = Orientation.A_IS_V1

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError(f"split sizes must be non-negative, got ({self.k1}, {self.k2})")

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    def to_dict(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "orientation": self.orientation.value}


@dataclass(frozen=True)
class CandidateTag:
    label: Label
    guess: Optional[SplitGuess] = None

    def to_dict(self) -> dict:
        return {"label": self.label.value, "guess": None if self.guess is None else self.guess.to_dict()}


def _check_k(g: BipartiteGraph, side: Side, k: int) -> None:
    if not 0 <= k <= g.size(side):
        raise ValueError(f"k={k} out of range 0..{g.size(side)} for side {side.value}")


def _refs(side: Side, idx0: Iterable[int]) -> frozenset[VertexRef]:
    return frozenset(VertexRef(side, int(i) + 1) for i in idx0)


def _top0(g: BipartiteGraph, side: Side, k: int) -> np.ndarray:
    return g.order0(side)[:k]


def _fill0(g: BipartiteGraph, side: Side, k: int, fixed0: np.ndarray) -> np.ndarray:
    if k == 0:
        return np.empty(0, dtype=np.int64)
    resid = residual_degrees0(g, side, fixed0)
    return np.lexsort((np.arange(len(resid)), -resid))[:k]


def top_k(g: BipartiteGraph, side: Side, k: int) -> frozenset[VertexRef]:
    """The ``k`` largest-degree vertices of ``side`` (ties by ascending index)."""
    side = Side(side)
    _check_k(g, side, k)
    return _refs(side, _top0(g, side, k))


def best_fill(g: BipartiteGraph, side: Side, k: int, already: Iterable[VertexRef]) -> frozenset[VertexRef]:
    """The ``k`` vertices of ``side`` covering the most edges not already covered by ``already``.

    ``already`` must lie on the opposite side.  Same-side vertices cover
    disjoint edge sets, so ranking by residual degree is exact.
    """
    side = Side(side)
    _check_k(g, side, k)
    already = list(already)
    for v in already:
        if Side(v.side) is side:
            raise ValueError(f"vertex {v} is on the fill side {side.value}")
        g.check_ref(v)
    fixed0 = np.array([v.index - 1 for v in already], dtype=np.int64)
    return _refs(side, _fill0(g, side, k, fixed0))


def _prefix_fill(g: BipartiteGraph, prefix_side: Side, p: int, k: int) -> Optional[Solution]:
    """Top ``p`` of ``prefix_side`` plus the best fill of ``k - p`` on the other side."""
    fill_side = prefix_side.other
    if not (0 <= p <= min(k, g.size(prefix_side)) and k - p <= g.size(fill_side)):
        return None
    pre = _top0(g, prefix_side, p)
    fill = _fill0(g, fill_side, k - p, pre)
    masks = {Side.A: np.zeros(g.n_a, dtype=bool), Side.B: np.zeros(g.n_b, dtype=bool)}
    masks[prefix_side][pre] = True
    masks[fill_side][fill] = True
    vertices = _refs(prefix_side, pre) | _refs(fill_side, fill)
    return Solution(vertices, coverage_masks(g, masks[Side.A], masks[Side.B]))


def _shape(guess: SplitGuess, label: Label) -> tuple[Side, int]:
    """(prefix side, prefix length) realizing ``label`` under ``guess``."""
    v1, v2 = guess.orientation.v1, guess.orientation.v2
    return {
        Label.SOL1: (v1, guess.k1),
        Label.SOL2: (v2, guess.k2),
        Label.SOL3: (v2, guess.k),
        Label.SOL4a: (v1, guess.k),
        Label.SOL4b: (v1, 2 * guess.k1),
    }[label]


def build_candidate(g: BipartiteGraph, guess: SplitGuess, label: Label) -> Optional[Solution]:
    """One of the five candidates, or ``None`` when it needs more vertices than a side holds."""
    side, p = _shape(guess, label)
    return _prefix_fill(g, side, p, guess.k)


def candidate_solutions(g: BipartiteGraph, guess: SplitGuess) -> list[tuple[CandidateTag, Solution]]:
    out = []
    for label in FIVE:
        sol = build_candidate(g, guess, label)
        if sol is not None:
            out.append((CandidateTag(label, guess), sol))
    return out


class _TopSum:
    """Sum of the ``r`` largest values of a multiset of small non-negative ints.

    Supports decrementing single elements.  Keeps a threshold ``t`` equal to the
    r-th largest value together with the count and sum of values above it; each
    unit decrement moves any order statistic by at most one, so the threshold
    walk is amortized O(1) per update.
    """

    def __init__(self, values: list[int]):
        top = max(values, default=0)
        self.cnt = [0] * (top + 2)
        for v in values:
            self.cnt[v] += 1
        self.ready = False
        self.t = top
        self.n_gt = 0
        self.s_gt = 0

    def decrement(self, v: int) -> None:
        cnt = self.cnt
        cnt[v] -= 1
        cnt[v - 1] += 1
        if self.ready:
            t = self.t
            if v > t + 1:
                self.s_gt -= 1
            elif v == t + 1:
                self.n_gt -= 1
                self.s_gt -= v

    def query(self, r: int) -> int:
        if r <= 0:
            return 0
        self.ready = True
        cnt, t, n_gt, s_gt = self.cnt, self.t, self.n_gt, self.s_gt
        while n_gt + cnt[t] < r:
            n_gt += cnt[t]
            s_gt += t * cnt[t]
            t -= 1
        while n_gt >= r:
            t += 1
            n_gt -= cnt[t]
            s_gt -= t * cnt[t]
        self.t, self.n_gt, self.s_gt = t, n_gt, s_gt
        return s_gt + (r - n_gt) * t


def _prefix_fill_curve(g: BipartiteGraph, prefix_side: Side, k: int) -> list[int]:
    """``curve[p]`` = coverage of top-``p`` of ``prefix_side`` plus best fill of ``k - p``; -1 if infeasible."""
    fill_side = prefix_side.other
    n_pre, n_fill = g.size(prefix_side), g.size(fill_side)
    lo, hi = max(0, k - n_fill), min(k, n_pre)
    curve = [-1] * (k + 1)
    if lo > hi:
        return curve
    resid = g.degrees(fill_side).tolist()
    tracker = _TopSum(resid)
    deg = g.degrees(prefix_side)
    ptr, adj = g.csr(prefix_side)
    order = g.order0(prefix_side)[:hi].tolist()
    prefix_cov = 0
    for p in range(hi + 1):
        if p:
            x = order[p - 1]
            prefix_cov += int(deg[x])
            for y in adj[ptr[x]:ptr[x + 1]].tolist():
                v = resid[y]
                resid[y] = v - 1
                tracker.decrement(v)
        if p >= lo:
            curve[p] = prefix_cov + tracker.query(k - p)
    return curve


def solve_comb07(g: BipartiteGraph, k: int) -> tuple[Solution, CandidateTag]:
    """Best of the five candidates over every split guess and both orientations.

    Ties go to the first candidate in enumeration order: orientation A-is-V1
    first, then ``k1`` ascending, then SOL1, SOL2, SOL3, SOL4a, SOL4b.
    """
    if not 0 <= k <= g.n_a + g.n_b:
        raise ValueError(f"k={k} out of range 0..{g.n_a + g.n_b}")
    curves = {side: _prefix_fill_curve(g, side, k) for side in (Side.A, Side.B)}
    best_val, best_tag = -1, None
    for orientation in Orientation:
        c1, c2 = curves[orientation.v1], curves[orientation.v2]
        n1, n2 = g.size(orientation.v1), g.size(orientation.v2)
        for k1 in range(k + 1):
            k2 = k - k1
            pair_ok = k1 <= n1 and k2 <= n2
            values = (
                c1[k1] if pair_ok else -1,
                c2[k2] if pair_ok else -1,
                c2[k],
                c1[k],
                c1[2 * k1] if 2 * k1 <= k else -1,
            )
            for label, val in zip(FIVE, values):
                if val > best_val:
                    best_val, best_tag = val, CandidateTag(label, SplitGuess(k1, k2, orientation))
    assert best_tag is not None
    sol = build_candidate(g, best_tag.guess, best_tag.label)
    assert sol is not None and sol.coverage == best_val and len(sol) == k
    return sol, best_tag


def greedy_sequence(g: BipartiteGraph, k: int) -> list[VertexRef]:
    """Vertices picked by the greedy rule, in pick order.

    Each step takes the vertex with the largest number of uncovered incident
    edges, ties by side A before B then ascending index.  Gains only shrink, so a
    lazy max-heap with re-validation on pop is exact.
    """
    if not 0 <= k <= g.n_a + g.n_b:
        raise ValueError(f"k={k} out of range 0..{g.n_a + g.n_b}")
    sides = (Side.A, Side.B)
    deg = [g.deg_a.tolist(), g.deg_b.tolist()]
    hit = [[0] * g.n_a, [0] * g.n_b]
    chosen = [[False] * g.n_a, [False] * g.n_b]
    heap = [(-d, s, i) for s in (0, 1) for i, d in enumerate(deg[s])]
    heapq.heapify(heap)
    picks = []
    while len(picks) < k:
        neg, s, i = heapq.heappop(heap)
        if chosen[s][i]:
            continue
        gain = deg[s][i] - hit[s][i]
        if -neg != gain:
            heapq.heappush(heap, (-gain, s, i))
            continue
        chosen[s][i] = True
        picks.append(VertexRef(sides[s], i + 1))
        for j in g.neighbors0(sides[s], i).tolist():
            hit[1 - s][j] += 1
    return picks


def solve_greedy(g: BipartiteGraph, k: int) -> Solution:
    return Solution.of(g, greedy_sequence(g, k))
