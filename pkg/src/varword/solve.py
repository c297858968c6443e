"""Top-level solvers for monochromatic ordered variable words."""

from __future__ import annotations

from typing import Optional

from .colorings import Coloring
from .errors import PreconditionViolated
from .levels import assemble_solution, build_witness_chain, compute_levels
from .search import SolutionReport, brute_force_ovw, check_solution, find_word
from .words import VarWord, var

STRATEGIES = ("levels", "word_tree", "brute")


def solve_ovw(coloring: Coloring, k: int, horizon: int, strategy: str = "levels",
              budget: Optional[int] = None, saturation: bool = False,
              override: bool = False) -> Optional[SolutionReport]:
    """Find an ordered word with k variable kinds monochromatic at depth k.

    levels: build k+1 certificate levels, decode a witness chain, assemble.
    word_tree: bound each variable's first occurrence by the matching
    certificate level's max position, then search words up to the horizon.
    brute: plain exhaustive enumeration (guarded above horizon 20).
    Search strategies return None for NotFound; levels raises
    BudgetExhausted when a level cannot be built.
    """
    if k < 1:
        raise PreconditionViolated("need k >= 1 variable kinds")
    if strategy not in STRATEGIES:
        raise PreconditionViolated(f"unknown strategy {strategy!r}")
    if coloring.colors == 1:
        # single declared color: any word solves
        w = VarWord(tuple(var(t) for t in range(k)))
        res = check_solution(coloring, w, k)
        return SolutionReport(word=w, color=res.color, depth_checked=k,
                              strategy=strategy)
    if strategy == "brute":
        return brute_force_ovw(coloring, k, horizon, override=override)
    # a failed search costs 2^(budget+1) evaluations, so the default stays modest
    levels = compute_levels(coloring, k + 1,
                            budget if budget is not None else min(horizon, 12),
                            saturation=saturation)
    if strategy == "levels":
        chain = build_witness_chain(levels, k + 1)
        return assemble_solution(levels, chain, coloring)
    bounds = [max(levels.cert(t + 1).P) for t in range(k)]
    got = find_word(coloring, k, horizon, bounds=bounds)
    if got is None:
        return None
    w, color = got
    return SolutionReport(word=w, color=color, depth_checked=k, strategy="word_tree")
