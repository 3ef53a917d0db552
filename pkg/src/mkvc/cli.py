"""``mkvc`` command line: solve, verify, gen, bench.

Exit codes::

    0  success
    2  unreadable / malformed input file, or invalid generator parameters
    3  k out of range for the instance
    4  exact solver cap exceeded
    5  verification failed (lemma inequality violated or ratio below 7/10)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .analysis import RatioReport, check_lemma_bounds, extract_params, ratio_str
from .covermax import CandidateTag, Label, solve_comb07, solve_greedy
from .exactsolve import ExactCapExceeded, exact_cap, solve_exact, solve_exact_all
from .graph import BipartiteGraph, GraphFormatError, read_graph, write_graph
from .instancegen import GeneratorError, gen_gnp, gen_planted, gen_semiregular

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BAD_K = 3
EXIT_CAP = 4
EXIT_VIOLATION = 5

CSV_FIELDS = [
    "instance", "k", "n_a", "n_b", "m",
    "comb07", "greedy", "exact",
    "ratio_comb07", "ratio_comb07_decimal", "ratio_greedy", "ratio_greedy_decimal",
    "verdict", "winner", "guess_k1", "guess_k2", "orientation",
    "ms_comb07", "ms_greedy", "ms_exact",
]


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> BipartiteGraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror or exc}") from None
    except GraphFormatError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None


def _check_k(g: BipartiteGraph, k: int) -> None:
    if not 0 <= k <= g.n_a + g.n_b:
        raise CliError(EXIT_BAD_K, f"k={k} out of range 0..{g.n_a + g.n_b}")


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, round((time.perf_counter() - t0) * 1000, 3)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _solution_json(sol, tag: Optional[CandidateTag] = None) -> dict:
    out = {"vertices": sol.labels(), "size": len(sol), "coverage": sol.coverage}
    if tag is not None:
        out["winner"] = tag.to_dict()
    return out


# -- solve ------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _load(args.input)
    _check_k(g, args.k)
    algs = ["comb07", "greedy", "exact"] if args.alg == "all" else [args.alg]
    results: dict[str, Optional[dict]] = {}
    timings = {}
    notes = {}
    for alg in algs:
        if alg == "comb07":
            (sol, tag), ms = _timed(solve_comb07, g, args.k)
            results[alg] = _solution_json(sol, tag)
        elif alg == "greedy":
            sol, ms = _timed(solve_greedy, g, args.k)
            results[alg] = _solution_json(sol, CandidateTag(Label.GREEDY))
        else:
            try:
                sol, ms = _timed(solve_exact, g, args.k, args.exact_cap)
            except ExactCapExceeded as exc:
                if args.alg == "exact":
                    raise CliError(EXIT_CAP, str(exc)) from None
                results[alg], notes["exact"] = None, str(exc)
                continue
            results[alg] = _solution_json(sol, CandidateTag(Label.EXACT))
        timings[alg] = ms

    ratios = {}
    exact = results.get("exact")
    if exact is not None:
        for alg in ("comb07", "greedy"):
            if results.get(alg) is not None and exact["coverage"] > 0:
                ratios[alg] = ratio_str(Fraction(results[alg]["coverage"], exact["coverage"]))
    report = {
        "instance": args.input,
        "k": args.k,
        "n_a": g.n_a,
        "n_b": g.n_b,
        "m": g.m,
        "results": results,
        "ratios": ratios,
    }
    if "comb07" in results and exact is not None:
        report["verdict"] = 10 * results["comb07"]["coverage"] >= 7 * exact["coverage"]
    if notes:
        report["notes"] = notes
    if args.timings:
        report["timings_ms"] = timings

    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "k", "alg", "coverage", "vertices"])
        for alg, res in results.items():
            if res is not None:
                w.writerow([args.input, args.k, alg, res["coverage"], " ".join(res["vertices"])])
        sys.stdout.write(buf.getvalue())
    else:
        _emit_json(report)
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def verify_instance(g: BipartiteGraph, k: int, cap: Optional[int], name: str) -> dict:
    """Full check of one ``(instance, k)``: profile, lemma rows and the 7/10 verdict."""
    opt = solve_exact(g, k, cap)
    return _verify_with(g, k, opt, name)


def _verify_with(g: BipartiteGraph, k: int, opt, name: str) -> dict:
    profile = extract_params(g, k, opt)
    lemmas = check_lemma_bounds(g, k, opt)
    alg, tag = solve_comb07(g, k)
    ratio = RatioReport(
        k=k,
        comb07=alg.coverage,
        winner=tag,
        exact=opt.coverage,
        greedy=solve_greedy(g, k).coverage,
        instance=name,
        lemma_counts=lemmas.counts(),
    )
    return {
        "instance": name,
        "k": k,
        "optimum": _solution_json(opt),
        "params": profile.to_dict(),
        "lemmas": lemmas.to_dict(),
        "theorem": ratio.to_dict(),
        "ok": bool(ratio.verdict) and lemmas.ok,
    }


def _witnesses(report: dict) -> list[str]:
    lines = []
    for row in report["lemmas"]["rows"]:
        if row["status"] == "violated":
            lines.append(
                f"VIOLATED {report['instance']} k={report['k']} {row['id']}: lhs={row['lhs']} < rhs={row['rhs']}"
            )
    th = report["theorem"]
    if th["verdict"] is False:
        cov = th["coverage"]
        lines.append(
            f"VIOLATED {report['instance']} k={report['k']} theorem: 10*{cov['comb07']} < 7*{cov['exact']}"
        )
    return lines


def _verify_file(path: str, k: Optional[int], cap: Optional[int]) -> list[dict]:
    g = _load(path)
    if k is None:
        opts = solve_exact_all(g, cap)
        return [_verify_with(g, kk, opts[kk], path) for kk in range(g.n_a + g.n_b + 1)]
    _check_k(g, k)
    return [verify_instance(g, k, cap, path)]


def cmd_verify(args) -> int:
    k = None if args.all_k else args.k
    if k is None and not args.all_k:
        raise CliError(EXIT_BAD_K, "verify needs -k K or --all-k")
    src = Path(args.input)
    if src.is_dir():
        return _verify_dir(sorted(str(p) for p in src.glob("*.bkvc")), k, args)
    try:
        reports = _verify_file(args.input, k, args.exact_cap)
    except ExactCapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    doc = reports[0] if len(reports) == 1 else {"instance": args.input, "reports": reports}
    bad = [line for r in reports for line in _witnesses(r)]
    if bad:
        for line in bad:
            print(line, file=sys.stderr)
        sys.stderr.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_VIOLATION
    _emit_json(doc)
    return EXIT_OK


def _verify_dir(paths: list[str], k: Optional[int], args) -> int:
    agg = {"instances": 0, "checks": 0, "lemma_rows": {"holds": 0, "violated": 0, "skipped": 0},
           "theorem_failures": 0, "skipped_instances": [], "failures": []}
    min_ratio: Optional[Fraction] = None
    for path in paths:
        try:
            reports = _verify_file(path, k, args.exact_cap)
        except CliError as exc:
            if exc.code == EXIT_INPUT:
                raise
            agg["skipped_instances"].append({"instance": path, "reason": str(exc)})
            continue
        except ExactCapExceeded as exc:
            agg["skipped_instances"].append({"instance": path, "reason": str(exc)})
            continue
        agg["instances"] += 1
        for rep in reports:
            agg["checks"] += 1
            for key, n in rep["lemmas"]["counts"].items():
                agg["lemma_rows"][key] += n
            th = rep["theorem"]
            if th["verdict"] is False:
                agg["theorem_failures"] += 1
            if th["ratio"] is not None:
                r = Fraction(th["ratio"])
                min_ratio = r if min_ratio is None or r < min_ratio else min_ratio
            agg["failures"].extend(_witnesses(rep))
    agg["min_ratio"] = ratio_str(min_ratio)
    if agg["failures"]:
        for line in agg["failures"]:
            print(line, file=sys.stderr)
        sys.stderr.write(json.dumps(agg, indent=2) + "\n")
        return EXIT_VIOLATION
    _emit_json(agg)
    return EXIT_OK


# -- gen --------------------------------------------------------------------


def cmd_gen(args) -> int:
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise CliError(EXIT_INPUT, f"model {args.model} needs --{', --'.join(m.replace('_', '-') for m in missing)}")

    try:
        if args.model == "gnp":
            need("na", "nb", "p")
            g = gen_gnp(args.na, args.nb, Fraction(args.p), args.seed)
            desc = f"gnp na={args.na} nb={args.nb} p={args.p} seed={args.seed}"
        elif args.model == "semiregular":
            need("na", "nb", "da", "db")
            g = gen_semiregular(args.na, args.nb, args.da, args.db, args.seed)
            desc = f"semiregular na={args.na} nb={args.nb} da={args.da} db={args.db} seed={args.seed}"
        else:
            need("na", "nb", "k1", "k2", "d_hub", "d_noise")
            inst = gen_planted(args.na, args.nb, args.k1, args.k2, args.d_hub, args.d_noise, args.seed)
            g = inst.graph
            desc = (f"planted na={args.na} nb={args.nb} k1={args.k1} k2={args.k2} "
                    f"d_hub={args.d_hub} d_noise={args.d_noise} seed={args.seed} k={inst.k} "
                    f"planted={' '.join(str(v) for v in sorted(inst.planted))}")
    except (GeneratorError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"gen: {exc}") from None
    text = write_graph(g, comments=[f"mkvc gen {desc}"])
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- bench ------------------------------------------------------------------


def _ks(g: BipartiteGraph, args) -> list[int]:
    n = g.n_a + g.n_b
    if args.sweep:
        return list(range(n + 1))
    if args.frac is not None:
        return [min(n, max(0, round(args.frac * n)))]
    return [args.k]


def _bench_one(job) -> tuple[list[dict], list[str]]:
    path, args = job
    warnings: list[str] = []
    try:
        g = read_graph(path)
    except (OSError, GraphFormatError) as exc:
        return [], [f"skipping {path}: {exc}"]
    rows = []
    exact_all = None
    for k in _ks(g, args):
        if not 0 <= k <= g.n_a + g.n_b:
            warnings.append(f"skipping {path} k={k}: out of range 0..{g.n_a + g.n_b}")
            continue
        (sol, tag), ms_c = _timed(solve_comb07, g, k)
        greedy, ms_g = _timed(solve_greedy, g, k)
        exact, ms_e = None, None
        if min(g.n_a, g.n_b) <= exact_cap(args.exact_cap):
            if args.sweep:
                if exact_all is None:
                    exact_all, ms_e = _timed(solve_exact_all, g, args.exact_cap)
                exact = exact_all[k].coverage
            else:
                opt, ms_e = _timed(solve_exact, g, k, args.exact_cap)
                exact = opt.coverage
        rep = RatioReport(k=k, comb07=sol.coverage, winner=tag, exact=exact, greedy=greedy.coverage)
        rows.append({
            "instance": path, "k": k, "n_a": g.n_a, "n_b": g.n_b, "m": g.m,
            "comb07": sol.coverage, "greedy": greedy.coverage, "exact": "" if exact is None else exact,
            "ratio_comb07": ratio_str(rep.ratio) or "",
            "ratio_comb07_decimal": "" if rep.ratio is None else f"{float(rep.ratio):.6f}",
            "ratio_greedy": ratio_str(rep.greedy_ratio) or "",
            "ratio_greedy_decimal": "" if rep.greedy_ratio is None else f"{float(rep.greedy_ratio):.6f}",
            "verdict": "" if rep.verdict is None else ("holds" if rep.verdict else "violated"),
            "winner": tag.label.value, "guess_k1": tag.guess.k1, "guess_k2": tag.guess.k2,
            "orientation": tag.guess.orientation.value,
            "ms_comb07": ms_c, "ms_greedy": ms_g, "ms_exact": "" if ms_e is None else ms_e,
            "_ratio": rep.ratio, "_gratio": rep.greedy_ratio,
        })
    return rows, warnings


def cmd_bench(args) -> int:
    src = Path(args.input)
    if not src.is_dir():
        raise CliError(EXIT_INPUT, f"{args.input} is not a directory")
    if args.k is None and args.frac is None and not args.sweep:
        args.k = 2
    paths = sorted(str(p) for p in src.glob("*.bkvc"))
    jobs = [(p, args) for p in paths]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]

    rows = [r for rs, _ in results for r in rs]
    warnings = [w for _, ws in results for w in ws]
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    skipped = sum(1 for rs, ws in results if not rs and ws)
    ratios = [r["_ratio"] for r in rows if r["_ratio"] is not None]
    gratios = [r["_gratio"] for r in rows if r["_gratio"] is not None]
    summary = {
        "files": len(paths),
        "rows": len(rows),
        "skipped": skipped,
        "violations": sum(1 for r in rows if r["verdict"] == "violated"),
        "min_ratio_comb07": ratio_str(min(ratios)) if ratios else None,
        "min_ratio_greedy": ratio_str(min(gratios)) if gratios else None,
    }
    if args.json:
        _emit_json({"rows": [{k: v for k, v in r.items() if not k.startswith("_")} for r in rows],
                    "summary": summary})
        return EXIT_OK
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    buf.write("# " + " ".join(f"{k}={'NA' if v is None else v}" for k, v in summary.items()) + "\n")
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mkvc", description="Max k-vertex cover in bipartite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cap_flag(p):
        p.add_argument("--exact-cap", type=int, default=None,
                       help="max size of the smaller side for the exact solver (env MKVC_EXACT_CAP, default 20)")

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-a", "--alg", choices=["comb07", "greedy", "exact", "all"], default="comb07")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true")
    cap_flag(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check lemma bounds and the 7/10 ratio against the exact optimum")
    p.add_argument("-i", "--input", required=True, help="a .bkvc file or a directory of them")
    p.add_argument("-k", type=int)
    p.add_argument("--all-k", action="store_true", help="check every k in 0..n_a+n_b")
    p.add_argument("--json", action="store_true", help="JSON report (default)")
    cap_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("-m", "--model", choices=["gnp", "semiregular", "planted"], required=True)
    p.add_argument("--na", type=int)
    p.add_argument("--nb", type=int)
    p.add_argument("-p", type=str, help="edge probability, decimal or fraction (gnp)")
    p.add_argument("--da", type=int)
    p.add_argument("--db", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--d-hub", type=int)
    p.add_argument("--d-noise", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="CSV comparison over a directory of instances")
    p.add_argument("-i", "--input", required=True, help="directory of .bkvc files")
    policy = p.add_mutually_exclusive_group()
    policy.add_argument("-k", type=int, help="fixed k (default 2)")
    policy.add_argument("--frac", type=float, help="k = round(frac * (n_a + n_b))")
    policy.add_argument("--sweep", action="store_true", help="every k in 0..n_a+n_b")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="CSV report (default)")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("-j", "--jobs", type=int, default=1)
    cap_flag(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"mkvc {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except ExactCapExceeded as exc:
        print(f"mkvc {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
