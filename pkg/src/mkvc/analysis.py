"""Parameter profile of a fixed optimum and executable ratio bounds.

Given an optimal k-set ``O`` the sides are oriented so that ``|O ∩ V1| <= |O ∩ V2|``
and the raw edge counts behind every ratio parameter are computed from scratch.
Each per-candidate lower bound is then checked as an integer inequality with
all denominators cleared, so no floating point is involved anywhere.

"Below" for the ``t`` and ``gcount`` counts means outside the top-``k`` prefix
of the relevant side's degree order (prefix truncated to the side size).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .covermax import (
    CandidateTag,
    Label,
    Orientation,
    SplitGuess,
    build_candidate,
    solve_comb07,
    solve_greedy,
    top_k,
)
from .exactsolve import solve_exact
from .graph import BipartiteGraph, Side, Solution, coverage

__all__ = [
    "ParamProfile",
    "LemmaRow",
    "LemmaReport",
    "RatioReport",
    "InvalidOptimum",
    "LEMMA_IDS",
    "extract_params",
    "check_lemma_bounds",
    "check_theorem",
    "ratio_str",
]

LEMMA_IDS = ("L1a", "L1b", "L1opt", "L2", "L3a", "L3b", "L4a", "L4b", "L4c")


class InvalidOptimum(ValueError):
    pass


def _ratio(num: int, den: int) -> Optional[Fraction]:
    return Fraction(num, den) if den else None


def _rational_json(x: Optional[Fraction]) -> Optional[dict]:
    return None if x is None else {"num": x.numerator, "den": x.denominator}


def ratio_str(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ParamProfile:
    """Raw counts relative to a fixed optimum; ratio properties derive from them."""

    k: int
    orientation: Orientation
    opt: int
    k1: int
    k2: int
    dO1: int
    cS1O1: int
    dPrivO2: int
    t: int
    gcount: int
    kp1: int
    z: int
    kp2: int
    l: int  # noqa: E741

    @property
    def alpha(self) -> Optional[Fraction]:
        return _ratio(self.dO1, self.opt)

    @property
    def beta1(self) -> Optional[Fraction]:
        return _ratio(self.cS1O1, self.dO1)

    @property
    def theta(self) -> Optional[Fraction]:
        return _ratio(self.t, self.dO1)

    @property
    def gamma(self) -> Optional[Fraction]:
        return _ratio(self.gcount, self.dPrivO2)

    @property
    def zeta(self) -> Optional[Fraction]:
        return _ratio(self.z, self.dO1)

    @property
    def lam(self) -> Optional[Fraction]:
        return _ratio(self.l, self.dPrivO2)

    @property
    def mu(self) -> Optional[Fraction]:
        return _ratio(self.k1, self.k2)

    @property
    def guess(self) -> SplitGuess:
        return SplitGuess(self.k1, self.k2, self.orientation)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["orientation"] = self.orientation.value
        for name in ("alpha", "beta1", "theta", "gamma", "zeta", "lam", "mu"):
            out[name] = _rational_json(getattr(self, name))
        return out


@dataclass(frozen=True)
class LemmaRow:
    id: str
    status: str  # "holds" | "violated" | "skipped"
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class LemmaReport:
    rows: list[LemmaRow]

    def counts(self) -> dict[str, int]:
        out = {"holds": 0, "violated": 0, "skipped": 0}
        for row in self.rows:
            out[row.status] += 1
        return out

    @property
    def violations(self) -> list[LemmaRow]:
        return [r for r in self.rows if r.status == "violated"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __getitem__(self, key: str) -> LemmaRow:
        for row in self.rows:
            if row.id == key:
                return row
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "counts": self.counts()}


@dataclass
class RatioReport:
    """End-to-end comparison of the algorithms on one ``(instance, k)``."""

    k: int
    comb07: int
    winner: CandidateTag
    exact: Optional[int] = None
    greedy: Optional[int] = None
    instance: Optional[str] = None
    lemma_counts: Optional[dict] = None
    timings_ms: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.exact is None or self.exact == 0:
            return None
        return Fraction(self.comb07, self.exact)

    @property
    def greedy_ratio(self) -> Optional[Fraction]:
        if self.exact is None or self.exact == 0 or self.greedy is None:
            return None
        return Fraction(self.greedy, self.exact)

    @property
    def verdict(self) -> Optional[bool]:
        if self.exact is None:
            return None
        return 10 * self.comb07 >= 7 * self.exact

    def to_dict(self) -> dict:
        out = {
            "instance": self.instance,
            "k": self.k,
            "coverage": {"comb07": self.comb07, "greedy": self.greedy, "exact": self.exact},
            "ratio": ratio_str(self.ratio),
            "ratio_decimal": None if self.ratio is None else float(self.ratio),
            "greedy_ratio": ratio_str(self.greedy_ratio),
            "greedy_ratio_decimal": None if self.greedy_ratio is None else float(self.greedy_ratio),
            "verdict": self.verdict,
            "winner": self.winner.to_dict(),
            "lemmas": self.lemma_counts,
        }
        if self.timings_ms is not None:
            out["timings_ms"] = self.timings_ms
        out.update(self.extra)
        return out


def _validate(g: BipartiteGraph, k: int, optimum: Solution) -> None:
    if not 0 <= k <= g.n_a + g.n_b:
        raise ValueError(f"k={k} out of range 0..{g.n_a + g.n_b}")
    if len(optimum) != min(k, g.n_a + g.n_b):
        raise InvalidOptimum(f"optimum has {len(optimum)} vertices, expected {k}")
    actual = coverage(g, optimum.vertices)
    if actual != optimum.coverage:
        raise InvalidOptimum(f"optimum claims coverage {optimum.coverage}, recomputed {actual}")


def extract_params(g: BipartiteGraph, k: int, optimum: Solution) -> ParamProfile:
    _validate(g, k, optimum)
    on_a = {v.index for v in optimum.vertices if v.side is Side.A}
    on_b = {v.index for v in optimum.vertices if v.side is Side.B}
    if len(on_a) <= len(on_b):
        orientation, o1, o2 = Orientation.A_IS_V1, on_a, on_b
    else:
        orientation, o1, o2 = Orientation.B_IS_V1, on_b, on_a
    v1, v2 = orientation.v1, orientation.v2
    deg1 = g.degrees(v1)

    s1 = {v.index for v in top_k(g, v1, len(o1))}
    top1 = {v.index for v in top_k(g, v1, min(k, g.size(v1)))}
    top2 = {v.index for v in top_k(g, v2, min(k, g.size(v2)))}

    d_o1 = sum(int(deg1[i - 1]) for i in o1)
    c_s1o1 = sum(int(deg1[i - 1]) for i in o1 & s1)
    t = 0
    for i in o1:
        t += sum(1 for v in g.neighbors0(v1, i - 1).tolist() if v + 1 not in top2)
    gcount = 0
    private_on = {}
    for j in o2:
        far = [u + 1 for u in g.neighbors0(v2, j - 1).tolist() if u + 1 not in o1]
        private_on[j] = len(far)
        gcount += sum(1 for u in far if u not in top1)
    d_priv = sum(private_on.values())
    missed1 = o1 - top1
    missed2 = o2 - top2

    profile = ParamProfile(
        k=k,
        orientation=orientation,
        opt=optimum.coverage,
        k1=len(o1),
        k2=len(o2),
        dO1=d_o1,
        cS1O1=c_s1o1,
        dPrivO2=d_priv,
        t=t,
        gcount=gcount,
        kp1=len(missed1),
        z=sum(int(deg1[i - 1]) for i in missed1),
        kp2=len(missed2),
        l=sum(private_on[j] for j in missed2),
    )
    assert profile.dO1 + profile.dPrivO2 == profile.opt
    return profile


def _row(lemma_id: str, lhs: int, rhs: int, exact: bool = False) -> LemmaRow:
    ok = lhs == rhs if exact else lhs >= rhs
    return LemmaRow(lemma_id, "holds" if ok else "violated", lhs, rhs)


def _skip(lemma_id: str, reason: str) -> LemmaRow:
    return LemmaRow(lemma_id, "skipped", reason=reason)


def check_lemma_bounds(g: BipartiteGraph, k: int, optimum: Solution) -> LemmaReport:
    """Evaluate the nine per-candidate bounds at the optimum's own split."""
    p = extract_params(g, k, optimum)
    guess = p.guess
    sol = {label: build_candidate(g, guess, label) for label in Label if label not in (Label.GREEDY, Label.EXACT)}
    cov = {label: (None if s is None else s.coverage) for label, s in sol.items()}
    opt, k1, k2, d1, c, z, l = p.opt, p.k1, p.k2, p.dO1, p.cS1O1, p.z, p.l
    rows: list[LemmaRow] = []

    c1 = cov[Label.SOL1]
    if c1 is None:
        rows += [_skip(i, "SOL1 infeasible") for i in ("L1a", "L1b", "L1opt")]
    else:
        rows.append(_row("L1a", c1, opt - d1 + c))
        rows.append(_row("L1b", c1, d1 + p.gcount))
        s1 = top_k(g, guess.orientation.v1, k1)
        o1 = {v for v in optimum.vertices if v.side is guess.orientation.v1}
        if s1 == o1:
            rows.append(_row("L1opt", c1, opt, exact=True))
        else:
            rows.append(_skip("L1opt", "S1 differs from O1"))

    c2 = cov[Label.SOL2]
    rows.append(_skip("L2", "SOL2 infeasible") if c2 is None else _row("L2", c2, opt - d1 + p.t))

    c3 = cov[Label.SOL3]
    if c3 is None:
        rows += [_skip(i, "SOL3 infeasible") for i in ("L3a", "L3b")]
    else:
        rows.append(_row("L3a", c3, opt - l - p.t))
        rows.append(_row("L3b", c3 * k2, p.dPrivO2 * k2 + k1 * l))

    c4a, c4b = cov[Label.SOL4a], cov[Label.SOL4b]
    if c4a is None:
        rows += [_skip(i, "SOL4a infeasible") for i in ("L4a", "L4b", "L4c")]
    else:
        c4 = max(c4a, -1 if c4b is None else c4b)
        rows.append(_row("L4a", c4, opt - z - p.gcount))
        if k1 == 0:
            rows += [_skip("L4b", "k1=0"), _skip("L4c", "k1=0")]
        else:
            rows.append(_row("L4b", c4 * k1, (2 * d1 - c) * k1 + (k2 - k1) * z))
            if c4b is None:
                rows.append(_skip("L4c", "SOL4b infeasible"))
            else:
                rhs = k1 * ((k2 - k1) * opt + (2 * k2 + k1) * d1 - k2 * c) + (k2 - 2 * k1) * k2 * z
                rows.append(_row("L4c", 2 * k1 * k2 * c4, rhs))
    return LemmaReport(rows)


def check_theorem(g: BipartiteGraph, k: int, cap: Optional[int] = None) -> RatioReport:
    """Compare the five-candidate solver against the exact optimum at ratio 7/10."""
    alg, tag = solve_comb07(g, k)
    opt = solve_exact(g, k, cap)
    return RatioReport(k=k, comb07=alg.coverage, winner=tag, exact=opt.coverage, greedy=solve_greedy(g, k).coverage)

