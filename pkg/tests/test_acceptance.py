"""Acceptance suite.

Each test prints one ``PASS``/``FAIL`` line naming its criterion, visible even
without ``-s``. Run alone with ``pytest tests/test_acceptance.py``.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from mkvc.cli import main
from mkvc.covermax import solve_comb07, solve_greedy, top_k
from mkvc.exactsolve import solve_exact_all, solve_naive
from mkvc.graph import Side, coverage, read_graph
from mkvc.instancegen import gen_gnp

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def report(request):
    """Yields a callable that records the detail line; prints PASS/FAIL on teardown."""
    capman = request.config.pluginmanager.getplugin("capturemanager")
    detail = {"text": ""}
    yield lambda text: detail.__setitem__("text", text)
    failed = getattr(request.node, "rep_call", None) is None or request.node.rep_call.failed
    with capman.global_and_fixture_disabled():
        print(f"\n[{'FAIL' if failed else 'PASS'}] {request.node.name}: {detail['text']}", flush=True)


def corpus_files():
    return sorted(CORPUS.glob("*.bkvc"))


@pytest.fixture(scope="module")
def corpus_sweep():
    """Exact, comb07 and greedy coverage for every corpus instance and every k."""
    rows = []
    for path in corpus_files():
        g = read_graph(path)
        for k, opt in enumerate(solve_exact_all(g)):
            rows.append((path.name, k, solve_comb07(g, k)[0].coverage, solve_greedy(g, k).coverage, opt.coverage))
    return rows


def test_corpus_shape(report):
    files = corpus_files()
    kinds = {p.name.split("_")[0] for p in files}
    report(f"{len(files)} instances, families {sorted(kinds)}")
    assert len(files) >= 500
    assert kinds == {"gnp", "planted", "semi"}


def test_c1_comb07_ratio_at_least_seven_tenths(corpus_sweep, report):
    bad = [r for r in corpus_sweep if 10 * r[2] < 7 * r[4]]
    worst = min(Fraction(r[2], r[4]) for r in corpus_sweep if r[4])
    report(f"{len(corpus_sweep)} (instance, k) pairs, {len(bad)} violations, min ratio {worst}")
    assert not bad, bad[:5]


def test_c2_greedy_ratio_at_least_0632(corpus_sweep, report):
    bad = [r for r in corpus_sweep if 1000 * r[3] < 632 * r[4]]
    worst = min(Fraction(r[3], r[4]) for r in corpus_sweep if r[4])
    report(f"{len(corpus_sweep)} (instance, k) pairs, {len(bad)} violations, min ratio {worst}")
    assert not bad, bad[:5]


def test_c3_lemma_suite_no_violations(capsys, report):
    code = main(["verify", "-i", str(CORPUS), "--all-k"])
    out, err = capsys.readouterr()
    agg = json.loads(out)
    report(
        f"{agg['instances']} instances, {agg['checks']} checks, rows {agg['lemma_rows']}, "
        f"theorem failures {agg['theorem_failures']}"
    )
    assert code == 0, err
    assert agg["instances"] == len(corpus_files()) and not agg["skipped_instances"]
    assert agg["lemma_rows"]["violated"] == 0 and not agg["failures"]
    assert agg["lemma_rows"]["holds"] > 0


def test_c4_semiregular_comb07_is_optimal(report):
    files = sorted(CORPUS.glob("semi_*.bkvc"))
    bad, checks = [], 0
    for path in files:
        g = read_graph(path)
        assert len(set(g.deg_a.tolist())) <= 1 and len(set(g.deg_b.tolist())) <= 1
        for k, opt in enumerate(solve_exact_all(g)):
            checks += 1
            if solve_comb07(g, k)[0].coverage != opt.coverage:
                bad.append((path.name, k))
    report(f"{len(files)} semi-regular instances, {checks} checks, {len(bad)} mismatches")
    assert len(files) == 50
    assert not bad, bad[:5]


def test_c5_exact_matches_naive(report):
    rnd = random.Random(12)
    bad, checks = [], 0
    for trial in range(200):
        n_a = rnd.randint(1, 11)
        n_b = rnd.randint(1, 12 - n_a)
        g = gen_gnp(n_a, n_b, Fraction(rnd.randint(1, 9), 10), 70_000 + trial)
        for k, opt in enumerate(solve_exact_all(g)):
            checks += 1
            naive = solve_naive(g, k)
            if naive.coverage != opt.coverage or coverage(g, opt.vertices) != opt.coverage:
                bad.append((trial, k))
    report(f"200 instances, {checks} checks, {len(bad)} mismatches")
    assert not bad, bad[:5]


def _cli(*argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run(
        [sys.executable, "-m", "mkvc.cli", *argv], capture_output=True, env=env, check=False
    )
    return proc.returncode, proc.stdout


def test_c6_reports_are_byte_identical(report):
    fixtures = sorted(FIXTURES.glob("*.bkvc"))
    commands = [["verify", "-i", str(FIXTURES), "--all-k"]]
    for path in fixtures:
        g = read_graph(path)
        commands.append(["solve", "-i", str(path), "-k", str((g.n_a + g.n_b) // 2), "-a", "all"])
        commands.append(["verify", "-i", str(path), "--all-k"])
    differ = []
    for argv in commands:
        first, second = _cli(*argv, hashseed=1), _cli(*argv, hashseed=2)
        assert first[0] == 0 and first[1]
        if first != second:
            differ.append(argv)
    report(f"{len(commands)} commands over {len(fixtures)} fixtures, {len(differ)} differ")
    assert not differ


def test_c7_large_instance_under_ten_seconds(report):
    g = gen_gnp(50_000, 50_000, Fraction(1, 2500), 7)
    k = 10_000
    start = time.perf_counter()
    sol, tag = solve_comb07(g, k)
    elapsed = time.perf_counter() - start
    one_sided = max(coverage(g, top_k(g, side, k)) for side in (Side.A, Side.B))
    report(f"m={g.m}, k={k}, {elapsed:.2f}s, coverage {sol.coverage} vs one-sided {one_sided}")
    assert 950_000 <= g.m <= 1_050_000
    assert len(sol) == k and coverage(g, sol.vertices) == sol.coverage
    assert elapsed < 10
    assert sol.coverage >= one_sided
