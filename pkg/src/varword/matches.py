"""Match notions over finite-set colorings, staged-gap statistics, and the
recursive marker coloring.

An enumeration schedule is a finite stand-in for a staged reference set: it
declares which elements ever appear and at which stage, so stage views and
the limit view are total. Gap statistics classify the gaps of a finite set
against those views; their parity is a two-coloring under which a verified
two-element full-match family exists and is searched for exhaustively.

A marker schedule fixes, per requirement index and stage, a pair of blocks
S0 < S1. The unique marker decomposition of a set (when it exists) splits it
around one scheduled block whose right part is itself undecomposable; the
recursive marker coloring copies or flips the left part's color according to
which block was used, and polarity tracks that flip through nesting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .colorings import FINSETS, Coloring, DerivedColoring
from .errors import (
    ColoringSyntaxError,
    PreconditionViolated,
    ScheduleTooShort,
)
from .words import iter_finsets


class EnumSchedule:
    """Elements with the stages at which they are enumerated."""

    def __init__(self, appear_stage: dict, max_stage: Optional[int] = None):
        self.appear_stage = dict(appear_stage)
        for n, s in self.appear_stage.items():
            if n < 0 or s < 0:
                raise PreconditionViolated("elements and stages are non-negative")
        self.max_stage = max_stage

    @property
    def limit_set(self) -> tuple:
        return tuple(sorted(self.appear_stage))

    def view(self, t: Optional[int]) -> frozenset:
        """Elements visible at stage t (None: the limit view)."""
        if t is None:
            return frozenset(self.appear_stage)
        if self.max_stage is not None and t > self.max_stage:
            raise ScheduleTooShort(f"stage {t} beyond declared coverage {self.max_stage}")
        return frozenset(n for n, s in self.appear_stage.items() if s <= t)


def parse_schedule(text: str) -> EnumSchedule:
    appear: dict = {}
    limit_line = None
    max_stage = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] == "elem":
            if len(toks) != 4 or toks[2] != "stage":
                raise ColoringSyntaxError("want: elem <n> stage <s>", ln)
            appear[int(toks[1])] = int(toks[3])
        elif toks[0] == "stages":
            max_stage = int(toks[1])
        elif toks[0] == "limit":
            limit_line = tuple(int(t) for t in toks[1].split(",")) if len(toks) > 1 else ()
        else:
            raise ColoringSyntaxError(f"unknown schedule directive {toks[0]!r}", ln)
    sched = EnumSchedule(appear, max_stage)
    if limit_line is not None and tuple(limit_line) != sched.limit_set:
        raise ColoringSyntaxError("limit line disagrees with the elem lines", 1)
    return sched


def serialize_schedule(sched: EnumSchedule) -> str:
    lines = [f"elem {n} stage {sched.appear_stage[n]}" for n in sorted(sched.appear_stage)]
    if sched.max_stage is not None:
        lines.append(f"stages {sched.max_stage}")
    lines.append("limit " + ",".join(str(n) for n in sched.limit_set))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GapStats:
    gaps: tuple          # per gap: (lo, hi, large, very_small)
    sg: int              # small gaps
    vsg: int             # very small gaps
    color: int           # vsg mod 2


def gap_stats(S: Sequence[int], sched: EnumSchedule) -> GapStats:
    """Classify every gap of S against the schedule's views.

    A gap (x, y) is large when the limit view below x already equals the
    stage-y view below x, and very small when the final-stage view separates
    x from y.
    """
    xs = tuple(sorted(S))
    if len(xs) < 2:
        raise PreconditionViolated("gap statistics need |S| >= 2")
    top = xs[-1]
    limit = sched.view(None)
    final = sched.view(top)
    gaps = []
    sg = vsg = 0
    for lo, hi in zip(xs, xs[1:]):
        large = {n for n in limit if n < lo} == {n for n in sched.view(hi) if n < lo}
        very_small = any(lo <= n < hi for n in final)
        gaps.append((lo, hi, large, very_small))
        sg += not large
        vsg += very_small
    return GapStats(tuple(gaps), sg, vsg, vsg % 2)


def gap_parity_coloring(sched: EnumSchedule) -> DerivedColoring:
    """Two-coloring of finite sets by very-small-gap parity (singletons: 0)."""

    def fn(S):
        xs = tuple(sorted(S))
        if not xs:
            raise PreconditionViolated("coloring of the empty set")
        if len(xs) == 1:
            return 0
        return gap_stats(xs, sched).color

    return DerivedColoring(FINSETS, fn, colors=2, label="gap_parity")


@dataclass
class MatchReport:
    ok: bool
    kind: str
    failing: Optional[tuple] = None
    checked: int = 0


MATCH_KINDS = ("left", "right", "full")


def match_check(kind: str, coloring: Coloring, family: Sequence, fragment: Iterable) -> MatchReport:
    """Does some family member B satisfy the kind's color equation for every
    fragment member S? First failing S reported."""
    if kind not in MATCH_KINDS:
        raise PreconditionViolated(f"unknown match kind {kind!r}")
    fam = [tuple(sorted(b)) for b in family]
    fam_colors = [coloring.eval(b) for b in fam]
    checked = 0
    for S in fragment:
        S = tuple(sorted(S))
        if S in fam:
            raise PreconditionViolated(f"fragment member {S} is in the family")
        cS = coloring.eval(S)
        hit = False
        for b, cB in zip(fam, fam_colors):
            cU = coloring.eval(tuple(sorted(set(b) | set(S))))
            checked += 1
            if kind == "left" and cB == cU:
                hit = True
            elif kind == "right" and cS == cU:
                hit = True
            elif kind == "full" and cB == cU == cS:
                hit = True
            if hit:
                break
        if not hit:
            return MatchReport(False, kind, S, checked)
    return MatchReport(True, kind, None, checked)


def find_match(kind: str, coloring: Coloring, horizon: int, max_b_size: int,
               max_b_count: int, m_generators: int) -> Optional[tuple[tuple, "IPFragment"]]:
    """Least (family, generator fragment) whose closure the family matches."""
    from .fut import IPFragment

    if kind not in MATCH_KINDS:
        raise PreconditionViolated(f"unknown match kind {kind!r}")
    candidates = [s for s in iter_finsets(horizon) if len(s) <= max_b_size]

    def gen_tuples(gens, lo, left):
        if left == 0:
            yield tuple(gens)
            return
        for cand in iter_finsets(horizon):
            if cand[0] < lo:
                continue
            yield from gen_tuples(gens + [cand], max(cand) + 1, left - 1)

    import itertools

    for count in range(1, max_b_count + 1):
        for family in itertools.combinations(candidates, count):
            for gens in gen_tuples([], 0, m_generators):
                frag = IPFragment(gens)
                closure = frag.closure
                if any(s in family for s in closure):
                    continue
                if match_check(kind, coloring, family, closure).ok:
                    return family, frag
    return None


def find_full_match_pair(sched: EnumSchedule, horizon: int) -> Optional[tuple[tuple, tuple]]:
    """Least pair (B0, B1) under the gap-parity coloring with even small-gap
    counts, odd/even very-small-gap counts, that verifiably full-matches
    every set in the horizon window avoiding both."""
    coloring = gap_parity_coloring(sched)

    def stats(S):
        if len(S) < 2:
            return 0, 0
        g = gap_stats(S, sched)
        return g.sg, g.vsg

    window = list(iter_finsets(horizon))
    b0s = [b for b in window if stats(b)[0] % 2 == 0 and stats(b)[1] % 2 == 1]
    b1s = [b for b in window if stats(b)[0] % 2 == 0 and stats(b)[1] % 2 == 0]
    for b0 in b0s:
        for b1 in b1s:
            if b0 == b1:
                continue
            used = set(b0) | set(b1)
            fragment = [s for s in window if not used & set(s)]
            if match_check("full", coloring, (b0, b1), fragment).ok:
                return b0, b1
    return None


class MarkerSchedule:
    """Per requirement index and stage, a pair of blocks S0 < S1."""

    def __init__(self, entries: dict):
        # entries: (e, stage or '*') -> (S0 tuple, S1 tuple)
        self.entries = dict(entries)
        for (e, s), (s0, s1) in self.entries.items():
            if not s0 or not s1:
                raise PreconditionViolated("marker blocks are non-empty")
            if max(s0) >= min(s1):
                raise PreconditionViolated(f"S0 !< S1 for requirement {e}")
        self._color_memo: dict = {}

    def indices(self, stage: int) -> list[int]:
        out = {e for (e, s) in self.entries if s == "*" or s == stage}
        return sorted(out)

    def block(self, e: int, u: int, stage: int) -> Optional[tuple]:
        entry = self.entries.get((e, stage), self.entries.get((e, "*")))
        if entry is None:
            return None
        return entry[u]

    def validate_layout(self, stage: int) -> None:
        """Blocks at one stage must be disjoint and interleaved in index order."""
        prev: Optional[tuple] = None
        for e in self.indices(stage):
            for u in (0, 1):
                blk = self.block(e, u, stage)
                if prev is not None and max(prev) >= min(blk):
                    raise PreconditionViolated(
                        f"marker blocks out of order at stage {stage} (requirement {e})"
                    )
                prev = blk


def parse_marker_schedule(text: str) -> MarkerSchedule:
    entries: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] != "marker":
            raise ColoringSyntaxError(f"unknown marker directive {toks[0]!r}", ln)
        fields = {}
        for tok in toks[1:]:
            k, eq, v = tok.partition("=")
            if not eq:
                raise ColoringSyntaxError(f"bad marker token {tok!r}", ln)
            fields[k] = v
        if set(fields) != {"e", "s", "S0", "S1"}:
            raise ColoringSyntaxError("want: marker e=<e> s=<s|*> S0=<ints> S1=<ints>", ln)
        stage = "*" if fields["s"] == "*" else int(fields["s"])
        key = (int(fields["e"]), stage)
        if key in entries:
            raise ColoringSyntaxError(f"duplicate marker entry {key}", ln)
        entries[key] = (
            tuple(int(t) for t in fields["S0"].split(",")),
            tuple(int(t) for t in fields["S1"].split(",")),
        )
    return MarkerSchedule(entries)


def serialize_marker_schedule(sched: MarkerSchedule) -> str:
    lines = []
    for (e, s) in sorted(sched.entries, key=lambda k: (k[0], -1 if k[1] == "*" else k[1])):
        s0, s1 = sched.entries[(e, s)]
        lines.append(
            f"marker e={e} s={s} S0={','.join(map(str, s0))} S1={','.join(map(str, s1))}"
        )
    return "\n".join(lines) + "\n"


def _candidate_decompositions(B: tuple, sched: MarkerSchedule, stage: int) -> list:
    out = []
    bset = set(B)
    for e in sched.indices(stage):
        for u in (0, 1):
            blk = sched.block(e, u, stage)
            if blk is None or not set(blk) <= bset:
                continue
            lo, hi = blk[0], blk[-1]
            if tuple(b for b in B if lo <= b <= hi) != blk:
                continue
            Z = tuple(b for b in B if b < lo)
            D = tuple(b for b in B if b > hi)
            other = sched.block(e, 1 - u, stage)
            if other and (set(other) <= set(Z) or set(other) <= set(D)):
                continue
            if D and _candidate_decompositions(D, sched, stage):
                continue
            out.append((e, u, Z, D))
    return out


def marker_decomposition(B: Sequence[int], sched: MarkerSchedule,
                         stage: Optional[int] = None) -> Optional[tuple]:
    """The unique (e, u, Z, D) split of B around a scheduled block, if any.

    The stage defaults to max B; the right part D must itself admit no split
    at the same stage.
    """
    b = tuple(sorted(B))
    if not b:
        return None
    s = stage if stage is not None else max(b)
    cands = _candidate_decompositions(b, sched, s)
    if len(cands) > 1:
        raise PreconditionViolated(f"schedule admits {len(cands)} decompositions of {b}")
    return cands[0] if cands else None


def marker_color(B: Sequence[int], sched: MarkerSchedule) -> int:
    """Recursive coloring: no split gives 0; a split copies the left part's
    color for the S0 block and flips it for the S1 block. Memoized per
    schedule."""
    b = tuple(sorted(B))
    memo = sched._color_memo
    if b in memo:
        return memo[b]
    if not b:
        memo[b] = 0
        return 0
    d = marker_decomposition(b, sched)
    if d is None:
        color = 0
    else:
        _, u, Z, _ = d
        color = marker_color(Z, sched) ^ u
    memo[b] = color
    return color


def marker_coloring(sched: MarkerSchedule) -> DerivedColoring:
    return DerivedColoring(FINSETS, lambda s: marker_color(s, sched),
                           colors=2, label="marker")


def marker_polarity(B: Sequence[int], e: int, sched: MarkerSchedule) -> Optional[int]:
    """Polarity of requirement e in B: u at the split when e matches, else
    the polarity within the left part xor u; None when e never shows up."""
    b = tuple(sorted(B))
    d = marker_decomposition(b, sched)
    if d is None:
        return None
    i, u, Z, _ = d
    if e == i:
        return u
    w = marker_polarity(Z, e, sched)
    return None if w is None else w ^ u


def hyperimmune_witness(fragment: Sequence[Sequence[int]], n: int) -> Optional[int]:
    """Max of the first fragment member whose minimum exceeds n, or None."""
    for S in fragment:
        S = tuple(sorted(S))
        if S and S[0] > n:
            return S[-1]
    return None
