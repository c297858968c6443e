"""Finite-union searches, the string/set encoding, and the reduction pipeline.

A union fragment is a family of pairwise disjoint, block-increasing
generator sets together with its closure under non-empty unions. The
searches below are exhaustive over a finite ground set and return the
lexicographically least witness under the canonical set order (shortlex on
characteristic strings), or None.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .colorings import FINSETS, STRINGS, Coloring
from .errors import DomainMismatch, PreconditionViolated
from .search import SolutionReport, check_solution
from .words import VarWord, assemble_from_blocks, char_string, iter_finsets


@dataclass(frozen=True)
class IPFragment:
    """Disjoint increasing generators and their union closure."""

    generators: tuple

    def __post_init__(self):
        gens = self.generators
        for g in gens:
            if not g:
                raise PreconditionViolated("empty generator")
        for lo, hi in zip(gens, gens[1:]):
            if max(lo) >= min(hi):
                raise PreconditionViolated(f"generators {lo} and {hi} out of order")

    @property
    def closure(self) -> tuple:
        out = []
        m = len(self.generators)
        for mask in range(1, 1 << m):
            members: set[int] = set()
            for i in range(m):
                if mask >> i & 1:
                    members |= set(self.generators[i])
            out.append(tuple(sorted(members)))
        return tuple(out)


class PairColoring:
    """Total map (finite set, integer) -> color."""

    def __init__(self, fn: Callable, colors: int):
        self.fn = fn
        self.colors = colors

    def eval(self, s: Sequence[int], n: int) -> int:
        c = self.fn(tuple(sorted(s)), n)
        if not 0 <= c < self.colors:
            raise PreconditionViolated(f"pair coloring emitted {c}")
        return c


def _finset_coloring(c: Coloring):
    if c.domain != FINSETS:
        raise DomainMismatch("needs a finite-set coloring")


def brute_force_fut(coloring: Coloring, m: int, n: int) -> Optional[tuple[IPFragment, int]]:
    """Least m-generator fragment over {0..n-1} with a monochromatic closure."""
    _finset_coloring(coloring)
    if m < 1:
        raise PreconditionViolated("need m >= 1 generators")
    candidates = list(iter_finsets(n))

    def extend(gens, closure, color):
        if len(gens) == m:
            return IPFragment(tuple(gens)), color
        lo = (max(gens[-1]) + 1) if gens else 0
        for cand in candidates:
            if cand[0] < lo:
                continue
            col = coloring.eval(cand)
            if color is not None and col != color:
                continue
            unions = [tuple(sorted(set(x) | set(cand))) for x in closure]
            if any(coloring.eval(u) != col for u in unions):
                continue
            got = extend(gens + [cand], closure + [cand] + unions, col)
            if got:
                return got
        return None

    return extend([], [], None)


def brute_force_wfut2(pair: PairColoring, m: int, n: int) -> Optional[tuple[IPFragment, int]]:
    """Least fragment with one color i such that every closure member S below
    a generator T satisfies pair(S, min T) = i."""
    if m < 1:
        raise PreconditionViolated("need m >= 1 generators")
    candidates = list(iter_finsets(n))

    def extend(gens, closure, color):
        if len(gens) == m:
            return IPFragment(tuple(gens)), (color if color is not None else 0)
        lo = (max(gens[-1]) + 1) if gens else 0
        for cand in candidates:
            if cand[0] < lo:
                continue
            col = color
            ok = True
            for s in closure:
                got = pair.eval(s, cand[0])
                if col is None:
                    col = got
                if got != col:
                    ok = False
                    break
            if not ok:
                continue
            unions = [tuple(sorted(set(x) | set(cand))) for x in closure]
            got = extend(gens + [cand], closure + [cand] + unions, col)
            if got:
                return got
        return None

    return extend([], [], None)


def encode_ovw_as_wfut2(coloring: Coloring) -> PairColoring:
    """Pair coloring of a string coloring: g(S, n) is the color of S's
    characteristic string of length n when max S < n, else 0."""
    if coloring.domain != STRINGS:
        raise DomainMismatch("needs a string coloring")

    def g(s, n):
        if s and max(s) >= n:
            return 0
        return coloring.eval(char_string(s, n))

    return PairColoring(g, coloring.colors)


def ip_closure_check(family: Sequence[Sequence[int]]) -> tuple[bool, Optional[tuple]]:
    """True iff the family is the closure of its minimal disjoint members.

    On failure the counterexample is a missing or extra member (or an
    overlapping minimal pair).
    """
    fam = {tuple(sorted(s)) for s in family}
    minimal = sorted(s for s in fam if not any(set(t) < set(s) for t in fam))
    for i, a in enumerate(minimal):
        for b in minimal[i + 1:]:
            if set(a) & set(b):
                return False, (a, b)
    closure = set()
    for mask in range(1, 1 << len(minimal)):
        members: set[int] = set()
        for i in range(len(minimal)):
            if mask >> i & 1:
                members |= set(minimal[i])
        closure.add(tuple(sorted(members)))
    missing = closure - fam
    if missing:
        return False, min(missing)
    extra = fam - closure
    if extra:
        return False, min(extra)
    return True, None


def fut_to_ovw_pipeline(coloring: Coloring, m: int, n: int) -> Optional[SolutionReport]:
    """Encode, search the pair statement, and assemble the variable word.

    The word maps the first generator to constant 1, generator i >= 1 to
    variable x_{i-1}; its depth-(m-1) check passes with the witness color.
    """
    got = brute_force_wfut2(encode_ovw_as_wfut2(coloring), m, n)
    if got is None:
        return None
    frag, color = got
    horizon = max(frag.generators[-1]) + 1
    w = assemble_from_blocks("ip", horizon, frag.generators)
    res = check_solution(coloring, w, m - 1)
    if not res.ok or (m > 1 and res.color != color):
        raise PreconditionViolated("pipeline word failed its own check")
    return SolutionReport(word=w, color=color, depth_checked=m - 1,
                          strategy="fut_pipeline", blocks=frag.generators)
