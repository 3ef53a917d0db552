import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mkvc.covermax import (
    FIVE,
    CandidateTag,
    Label,
    Orientation,
    SplitGuess,
    _TopSum,
    best_fill,
    candidate_solutions,
    greedy_sequence,
    solve_comb07,
    solve_greedy,
    top_k,
)
from mkvc.exactsolve import solve_exact, solve_naive
from mkvc.graph import BipartiteGraph, Side, VertexRef, coverage
from mkvc.instancegen import gen_gnp, gen_semiregular

A = lambda i: VertexRef(Side.A, i)  # noqa: E731
B = lambda i: VertexRef(Side.B, i)  # noqa: E731


def random_graph(seed, max_side=7):
    rnd = random.Random(seed)
    n_a, n_b = rnd.randint(0, max_side), rnd.randint(0, max_side)
    p = rnd.choice([0.15, 0.3, 0.5, 0.8])
    return BipartiteGraph.from_edges(
        n_a, n_b, [(a, b) for a in range(1, n_a + 1) for b in range(1, n_b + 1) if rnd.random() < p]
    )


def reference_comb07(g, k):
    """Literal enumeration of every guess and candidate, first strict maximum wins."""
    best = None
    for orientation in Orientation:
        for k1 in range(k + 1):
            for tag, sol in candidate_solutions(g, SplitGuess(k1, k - k1, orientation)):
                if best is None or sol.coverage > best[0].coverage:
                    best = (sol, tag)
    return best


# -- top_k / best_fill ------------------------------------------------------


def test_top_k_examples(p4, k23):
    assert top_k(p4, Side.A, 1) == {A(2)}
    assert top_k(p4, Side.B, 2) == {B(1), B(2)}
    assert top_k(k23, Side.B, 2) == {B(1), B(2)}


def test_top_k_range(p4):
    with pytest.raises(ValueError):
        top_k(p4, Side.A, 3)
    with pytest.raises(ValueError):
        top_k(p4, Side.A, -1)


def test_best_fill_examples(p4):
    assert best_fill(p4, Side.B, 1, {A(2)}) == {B(1)}
    assert best_fill(p4, Side.A, 0, set()) == frozenset()


def test_best_fill_side_mismatch(p4):
    with pytest.raises(ValueError):
        best_fill(p4, Side.B, 1, {B(2)})


def test_best_fill_matches_brute_force_gnp():
    g = gen_gnp(6, 6, "1/2", 1)
    fixed = top_k(g, Side.A, 2)
    base = coverage(g, fixed)
    brute = max(
        coverage(g, fixed | {B(i) for i in combo}) - base for combo in itertools.combinations(range(1, 7), 3)
    )
    got = coverage(g, fixed | best_fill(g, Side.B, 3, fixed)) - base
    assert brute == 7
    assert got == brute


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_best_fill_optimal_among_all_subsets(seed, data):
    g = random_graph(seed, max_side=6)
    side = data.draw(st.sampled_from([Side.A, Side.B]))
    n_other = g.size(side.other)
    fixed = {VertexRef(side.other, i) for i in range(1, n_other + 1) if data.draw(st.booleans())}
    k = data.draw(st.integers(0, g.size(side)))
    base = coverage(g, fixed)
    got = coverage(g, fixed | best_fill(g, side, k, fixed)) - base
    brute = max(
        coverage(g, fixed | {VertexRef(side, i) for i in combo}) - base
        for combo in itertools.combinations(range(1, g.size(side) + 1), k)
    )
    assert got == brute


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_top_k_dominates_every_same_side_subset(seed, data):
    g = random_graph(seed, max_side=6)
    side = data.draw(st.sampled_from([Side.A, Side.B]))
    k = data.draw(st.integers(0, g.size(side)))
    best = max(
        coverage(g, {VertexRef(side, i) for i in combo})
        for combo in itertools.combinations(range(1, g.size(side) + 1), k)
    )
    assert coverage(g, top_k(g, side, k)) == best


# -- candidates -------------------------------------------------------------


def test_candidates_p4(p4):
    cands = dict((tag.label, sol) for tag, sol in candidate_solutions(p4, SplitGuess(1, 1)))
    assert cands[Label.SOL1].vertices == {A(2), B(1)}
    assert cands[Label.SOL1].coverage == 3 == solve_naive(p4, 2).coverage


def test_candidates_star_one_sided(star2):
    cands = dict((tag.label, sol) for tag, sol in candidate_solutions(star2, SplitGuess(1, 0)))
    assert cands[Label.SOL4a].vertices == {A(1)}
    assert cands[Label.SOL4a].coverage == 2


def test_candidates_k23_full_cover(k23):
    cands = dict((tag.label, sol) for tag, sol in candidate_solutions(k23, SplitGuess(2, 0)))
    assert cands[Label.SOL4a].vertices == {A(1), A(2)}
    assert cands[Label.SOL4a].coverage == 6 == k23.m


def test_infeasible_candidates_are_omitted(star2):
    # V2 = B has 2 vertices, k = 3: SOL3 impossible; V1 = A has 1 vertex: SOL4a impossible
    labels = {tag.label for tag, _ in candidate_solutions(star2, SplitGuess(1, 2))}
    assert Label.SOL3 not in labels and Label.SOL4a not in labels
    assert Label.SOL1 in labels


def test_candidate_sizes():
    g = gen_gnp(7, 5, "2/5", 3)
    for k in range(g.n_a + g.n_b + 1):
        for orientation in Orientation:
            for k1 in range(k + 1):
                for tag, sol in candidate_solutions(g, SplitGuess(k1, k - k1, orientation)):
                    assert len(sol) == k, tag
                    assert sol.coverage == coverage(g, sol.vertices)


def test_split_guess_validation():
    with pytest.raises(ValueError):
        SplitGuess(-1, 2)
    assert SplitGuess(2, 3).k == 5


# -- solve_comb07 -----------------------------------------------------------


def test_comb07_p4(p4):
    sol, tag = solve_comb07(p4, 2)
    assert sol.coverage == 3 == solve_naive(p4, 2).coverage
    assert tag.label in FIVE and tag.guess is not None


def test_comb07_all_vertices_covers_everything():
    for seed in range(20):
        g = random_graph(seed)
        sol, _ = solve_comb07(g, g.n_a + g.n_b)
        assert sol.coverage == g.m


def test_comb07_semiregular_optimal_every_k():
    g = gen_semiregular(6, 4, 2, 3, 0)
    for k in range(g.n_a + g.n_b + 1):
        assert solve_comb07(g, k)[0].coverage == solve_exact(g, k).coverage


def test_comb07_k_out_of_range(p4):
    with pytest.raises(ValueError):
        solve_comb07(p4, 5)


@pytest.mark.parametrize("seed", range(120))
def test_comb07_matches_literal_enumeration(seed):
    g = random_graph(seed)
    for k in range(g.n_a + g.n_b + 1):
        fast_sol, fast_tag = solve_comb07(g, k)
        ref_sol, ref_tag = reference_comb07(g, k)
        assert fast_sol.coverage == ref_sol.coverage
        assert fast_tag == ref_tag
        assert fast_sol.vertices == ref_sol.vertices


@pytest.mark.parametrize("seed", range(40))
def test_comb07_properties(seed):
    g = random_graph(seed, max_side=6)
    prev = -1
    for k in range(g.n_a + g.n_b + 1):
        sol, tag = solve_comb07(g, k)
        assert len(sol) == k
        assert sol.coverage >= prev
        prev = sol.coverage
        for side in (Side.A, Side.B):
            if k <= g.size(side):
                assert sol.coverage >= coverage(g, top_k(g, side, k))
        opt = solve_exact(g, k).coverage
        assert 10 * sol.coverage >= 7 * opt
        assert solve_comb07(g, k) == (sol, tag)


def test_comb07_winner_tag_is_reproducible():
    g = gen_gnp(9, 8, "1/3", 21)
    sol, tag = solve_comb07(g, 6)
    again = [c for t, c in candidate_solutions(g, tag.guess) if t.label is tag.label]
    assert again == [sol]


# -- greedy -----------------------------------------------------------------


def test_greedy_examples(star2, p4):
    assert solve_greedy(star2, 1).vertices == {A(1)} and solve_greedy(star2, 1).coverage == 2
    assert solve_greedy(p4, 1).vertices == {A(2)}


def test_greedy_replay_gnp():
    g = gen_gnp(10, 10, "3/10", 7)
    picks = greedy_sequence(g, 4)
    chosen: set[VertexRef] = set()
    for v in picks:
        base = coverage(g, chosen)
        gains = {u: coverage(g, chosen | {u}) - base for u in g.vertices() if u not in chosen}
        top = max(gains.values())
        assert v == min(u for u, gain in gains.items() if gain == top)
        chosen.add(v)
    assert solve_greedy(g, 4).coverage == coverage(g, chosen) == 19


@pytest.mark.parametrize("seed", range(60))
def test_greedy_replay_random(seed):
    g = random_graph(seed, max_side=5)
    k = random.Random(seed).randint(0, g.n_a + g.n_b)
    chosen: set[VertexRef] = set()
    for v in greedy_sequence(g, k):
        base = coverage(g, chosen)
        gains = {u: coverage(g, chosen | {u}) - base for u in g.vertices() if u not in chosen}
        top = max(gains.values())
        assert v == min(u for u, gain in gains.items() if gain == top)
        chosen.add(v)
    assert len(chosen) == k
    if g.n_a + g.n_b <= 14:
        assert 1000 * coverage(g, chosen) >= 632 * solve_naive(g, k).coverage


def test_tags_serialize():
    tag = CandidateTag(Label.SOL4b, SplitGuess(1, 3, Orientation.B_IS_V1))
    assert tag.to_dict() == {"label": "SOL4b", "guess": {"k1": 1, "k2": 3, "orientation": "B-is-V1"}}


# -- incremental top-r sum --------------------------------------------------


@given(
    st.lists(st.integers(0, 6), min_size=1, max_size=12),
    st.lists(st.tuples(st.integers(0, 11), st.integers(1, 12)), max_size=30),
)
def test_topsum_tracker_against_sorting(values, ops):
    values = list(values)
    tracker = _TopSum(values)
    for pos, r in ops:
        i = pos % len(values)
        if values[i] > 0:
            tracker.decrement(values[i])
            values[i] -= 1
        r = min(r, len(values))
        assert tracker.query(r) == sum(sorted(values, reverse=True)[:r])
