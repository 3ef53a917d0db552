"""Seeded instance generators.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so an
instance is a pure function of the arguments within this implementation.
Bit-identity across other implementations is not a goal; corpora are shipped
as ``.bkvc`` files instead.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from .graph import BipartiteGraph, Side, VertexRef

__all__ = ["gen_gnp", "gen_semiregular", "gen_planted", "PlantedInstance", "GeneratorError"]

Probability = Union[float, Fraction, str]


class GeneratorError(ValueError):
    pass


def _prob(p: Probability) -> float:
    q = Fraction(p) if isinstance(p, str) else p
    if not 0 <= q <= 1:
        raise GeneratorError(f"p={p} outside [0, 1]")
    return float(q)


def gen_gnp(n_a: int, n_b: int, p: Probability, seed: int) -> BipartiteGraph:
    """Each of the ``n_a * n_b`` pairs becomes an edge independently with probability ``p``.

    Uses geometric skipping over the flattened pair index, which samples the
    same distribution in O(m) rather than O(n_a * n_b).
    """
    if n_a < 0 or n_b < 0:
        raise GeneratorError("side sizes must be non-negative")
    q = _prob(p)
    total = n_a * n_b
    if q == 0 or total == 0:
        return BipartiteGraph(n_a, n_b, np.empty(0, np.int64), np.empty(0, np.int64))
    if q == 1:
        pos = np.arange(total, dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        chunks = []
        last = -1
        chunk = max(1024, int(total * q * 1.1) + 64)
        while last < total:
            gaps = rng.geometric(q, size=chunk).astype(np.int64)
            steps = last + np.cumsum(gaps)
            chunks.append(steps[steps < total])
            last = int(steps[-1])
        pos = np.concatenate(chunks)
    return BipartiteGraph(n_a, n_b, pos // n_b, pos % n_b)


def gen_semiregular(n_a: int, n_b: int, d_a: int, d_b: int, seed: int, swaps: int | None = None) -> BipartiteGraph:
    """Every A-vertex has degree ``d_a`` and every B-vertex degree ``d_b``.

    Starts from the circulant ``a_i ~ b_{(i*d_a + j) mod n_b}`` and applies
    ``swaps`` attempted degree-preserving double-edge swaps (default ``10 * m``).
    """
    if min(n_a, n_b, d_a, d_b) < 0:
        raise GeneratorError("sizes and degrees must be non-negative")
    if n_a * d_a != n_b * d_b:
        raise GeneratorError(f"n_a*d_a = {n_a * d_a} differs from n_b*d_b = {n_b * d_b}")
    if d_a > n_b or d_b > n_a:
        raise GeneratorError(f"degrees exceed opposite side size (d_a={d_a} > n_b={n_b} or d_b={d_b} > n_a={n_a})")
    ea = np.repeat(np.arange(n_a, dtype=np.int64), d_a)
    eb = (ea * d_a + np.tile(np.arange(d_a, dtype=np.int64), n_a)) % max(n_b, 1)
    edges = list(zip(ea.tolist(), eb.tolist()))
    present = set(edges)
    if len(present) != len(edges):
        raise GeneratorError("circulant base is not simple for these parameters")

    m = len(edges)
    rng = np.random.default_rng(seed)
    n_swaps = 10 * m if swaps is None else swaps
    if m >= 2 and n_swaps:
        picks = rng.integers(0, m, size=(n_swaps, 2)).tolist()
        for i, j in picks:
            (a1, b1), (a2, b2) = edges[i], edges[j]
            if a1 == a2 or b1 == b2 or (a1, b2) in present or (a2, b1) in present:
                continue
            present -= {(a1, b1), (a2, b2)}
            present |= {(a1, b2), (a2, b1)}
            edges[i], edges[j] = (a1, b2), (a2, b1)

    g = BipartiteGraph(n_a, n_b, np.array([e[0] for e in edges], np.int64), np.array([e[1] for e in edges], np.int64))
    if np.any(g.deg_a != d_a) or np.any(g.deg_b != d_b) or g.m != n_a * d_a:
        raise GeneratorError("semi-regular validation failed")
    return g


class PlantedInstance(NamedTuple):
    graph: BipartiteGraph
    k: int
    planted: frozenset[VertexRef]


def gen_planted(n_a: int, n_b: int, k1: int, k2: int, d_hub: int, d_noise: int, seed: int) -> PlantedInstance:
    """Plant ``k1`` A-hubs and ``k2`` B-hubs whose edges are pairwise disjoint, then add distractors.

    Each A-hub gets ``d_hub`` edges to non-planted B vertices and each B-hub
    ``d_hub`` edges to non-planted A vertices.  Every non-planted vertex then
    receives ``min(d_noise, hubs on the other side)`` edges into the planted
    hubs opposite it, so the planted ``k1 + k2`` vertices cover every edge
    while the distractors carry misleadingly high degree.
    """
    if min(n_a, n_b, k1, k2, d_hub, d_noise) < 0:
        raise GeneratorError("all parameters must be non-negative")
    if k1 > n_a or k2 > n_b:
        raise GeneratorError(f"planted sizes exceed sides: k1={k1}/{n_a}, k2={k2}/{n_b}")
    if (k1 and d_hub > n_b - k2) or (k2 and d_hub > n_a - k1):
        raise GeneratorError(f"d_hub={d_hub} exceeds the non-planted vertices available on the opposite side")
    rng = np.random.default_rng(seed)
    perm_a = rng.permutation(n_a)
    perm_b = rng.permutation(n_b)
    hubs_a, rest_a = perm_a[:k1], perm_a[k1:]
    hubs_b, rest_b = perm_b[:k2], perm_b[k2:]

    pairs: set[tuple[int, int]] = set()
    for a in hubs_a.tolist():
        pairs.update((a, int(b)) for b in rng.choice(rest_b, size=d_hub, replace=False))
    for b in hubs_b.tolist():
        pairs.update((int(a), b) for a in rng.choice(rest_a, size=d_hub, replace=False))
    noise_a = min(d_noise, k2)
    for a in rest_a.tolist():
        pairs.update((a, int(b)) for b in rng.choice(hubs_b, size=noise_a, replace=False))
    noise_b = min(d_noise, k1)
    for b in rest_b.tolist():
        pairs.update((int(a), b) for a in rng.choice(hubs_a, size=noise_b, replace=False))

    ordered = sorted(pairs)
    g = BipartiteGraph(
        n_a, n_b, np.array([e[0] for e in ordered], np.int64), np.array([e[1] for e in ordered], np.int64)
    )
    planted = frozenset(
        [VertexRef(Side.A, int(a) + 1) for a in hubs_a] + [VertexRef(Side.B, int(b) + 1) for b in hubs_b]
    )
    return PlantedInstance(g, k1 + k2, planted)
