"""Combinatorial 0.7-approximation for max k-vertex cover in bipartite graphs."""

from .analysis import (
    LemmaReport,
    ParamProfile,
    RatioReport,
    check_lemma_bounds,
    check_theorem,
    extract_params,
)
from .covermax import (
    CandidateTag,
    Label,
    Orientation,
    SplitGuess,
    best_fill,
    candidate_solutions,
    solve_comb07,
    solve_greedy,
    top_k,
)
from .exactsolve import ExactCapExceeded, solve_exact, solve_exact_all, solve_naive
from .graph import (
    BipartiteGraph,
    GraphFormatError,
    Side,
    Solution,
    VertexRef,
    coverage,
    parse_graph,
    read_graph,
    residual_degrees,
    write_graph,
)
from .instancegen import gen_gnp, gen_planted, gen_semiregular

__version__ = "0.1.0"
