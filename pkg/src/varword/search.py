"""Solution checking and exhaustive enumeration of ordered variable words.

The enumerator is the shared engine behind the brute-force oracle and the
bounded word-tree strategy: iterative deepening over word length, depth-first
in symbol order '0' < '1' < x_repeat < x_fresh, pruning a branch as soon as a
completed instantiation disagrees with the established color. A word's
depth-k instantiations are all determined once x_{k-1} first occurs, so only
words ending at that first occurrence are explored at each target length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .colorings import Coloring
from .errors import PreconditionViolated
from .words import VarWord, instantiate, var


@dataclass
class CheckResult:
    """Outcome of a monochromaticity check; counterexample holds (a, a')."""

    ok: bool
    color: Optional[int] = None
    counterexample: Optional[tuple[str, str]] = None
    counter_colors: Optional[tuple[int, int]] = None


@dataclass
class SolutionReport:
    word: VarWord
    color: Optional[int]
    depth_checked: int
    strategy: str
    base: Optional[str] = None            # levels strategy: the flipped base string Y
    blocks: Optional[tuple] = None        # levels strategy: the flip blocks
    chain: object = None                  # levels strategy: the witness chain


def _values(mask: int, width: int) -> str:
    return "".join("1" if mask >> t & 1 else "0" for t in range(width))


def check_solution(coloring: Coloring, w: VarWord, depth: int) -> CheckResult:
    """Evaluate every instantiation with fewer than `depth` values.

    Passes when all attained colors agree; the first disagreeing pair of
    value strings (in shortlex order) is returned otherwise.
    """
    if not w.is_ordered():
        raise PreconditionViolated("word is not ordered")
    if depth > w.var_count:
        raise PreconditionViolated(f"depth {depth} > var_count {w.var_count}")
    first: Optional[tuple[str, int]] = None
    for t in range(depth):
        for v in range(1 << t):
            a = _values(v, t)
            color = coloring.eval(instantiate(w, a))
            if first is None:
                first = (a, color)
            elif color != first[1]:
                return CheckResult(False, None, (first[0], a), (first[1], color))
    return CheckResult(True, first[1] if first else None)


@dataclass
class SeqCheckResult:
    ok: bool
    per_member: list
    counterexample: Optional[tuple] = None   # (i, b, a, a') with colors appended


def check_seq_solution(members: Sequence[Coloring], w: VarWord, depth: int) -> SeqCheckResult:
    """Per-member check: for each i < depth and prefix values b of length i,
    the instantiations {W(b a)} must be monochromatic for coloring i."""
    if not w.is_ordered():
        raise PreconditionViolated("word is not ordered")
    if depth > len(members):
        raise PreconditionViolated("depth exceeds the coloring sequence")
    if depth > w.var_count:
        raise PreconditionViolated(f"depth {depth} > var_count {w.var_count}")
    per = []
    counter = None
    for i in range(depth):
        ci = members[i]
        ok_i = True
        for bv in range(1 << i):
            b = _values(bv, i)
            first = None
            for t in range(w.var_count - i):
                for av in range(1 << t):
                    a = _values(av, t)
                    color = ci.eval(instantiate(w, b + a))
                    if first is None:
                        first = (a, color)
                    elif color != first[1]:
                        ok_i = False
                        if counter is None:
                            counter = (i, b, first[0], a, first[1], color)
                        break
                if not ok_i:
                    break
            if not ok_i:
                break
        per.append(ok_i)
    return SeqCheckResult(all(per), per, counter)


def _replay_prefix(coloring, syms, k, bounds):
    """Run the DFS transition logic over fixed prefix symbols.

    Returns (vars_used, insts, target) or None when a completed
    instantiation check already fails inside the prefix.
    """
    v = 0
    insts = [""]
    target = None
    for pos, sym in enumerate(syms):
        if sym == "0" or sym == "1":
            insts = [s + sym for s in insts]
            continue
        j = int(sym[1:])
        if j == v:
            # first occurrence: all depth-v instantiations are now complete
            if bounds is not None and pos >= bounds[v]:
                return None
            for s in insts:
                c = coloring.eval(s)
                if target is None:
                    target = c
                elif c != target:
                    return None
            insts = insts + [s + "1" for s in insts]
            insts[: 1 << v] = [s + "0" for s in insts[: 1 << v]]
            v += 1
        else:
            insts = [s + ("1" if m >> j & 1 else "0") for m, s in enumerate(insts)]
    return v, insts, target


def find_word(coloring: Coloring, k: int, horizon: int,
              bounds: Optional[Sequence[int]] = None,
              prefix: Optional[VarWord] = None) -> Optional[tuple[VarWord, int]]:
    """Shortlex-least ordered word with k variable kinds whose depth-k check
    passes, or None. With a prefix, only fresh variables may follow it."""
    if k < 1:
        raise PreconditionViolated("need k >= 1 variable kinds")
    cap = coloring.max_len()
    if cap is not None:
        horizon = min(horizon, cap)
    pre_syms: tuple[str, ...] = prefix.symbols if prefix is not None else ()
    v0 = prefix.var_count if prefix is not None else 0
    if prefix is not None:
        if not prefix.is_ordered():
            raise PreconditionViolated("prefix word is not ordered")
        if k <= v0:
            raise PreconditionViolated(f"k={k} must exceed prefix variables {v0}")
    state = _replay_prefix(coloring, pre_syms, k, bounds)
    if state is None:
        return None
    v_in, insts_in, target_in = state
    lock = v0  # variables below this index may not recur past the prefix

    def dfs(length, pos, syms, v, insts, target):
        if pos == length - 1:
            if v != k - 1:
                return None
            if bounds is not None and pos >= bounds[k - 1]:
                return None
            tgt = target
            for s in insts:
                c = coloring.eval(s)
                if tgt is None:
                    tgt = c
                elif c != tgt:
                    return None
            return VarWord(tuple(syms) + (var(k - 1),)), tgt
        if (k - 1) - v > (length - 1) - pos:
            return None
        # letters
        for b in ("0", "1"):
            got = dfs(length, pos + 1, syms + [b], v, [s + b for s in insts], target)
            if got:
                return got
        # repeat the newest variable
        if v > lock:
            j = v - 1
            nxt = [s + ("1" if m >> j & 1 else "0") for m, s in enumerate(insts)]
            got = dfs(length, pos + 1, syms + [var(j)], v, nxt, target)
            if got:
                return got
        # fresh variable (never the final one before the last position)
        if v < k - 1:
            if bounds is not None and pos >= bounds[v]:
                return None
            tgt = target
            for s in insts:
                c = coloring.eval(s)
                if tgt is None:
                    tgt = c
                elif c != tgt:
                    return None
            doubled = [s + "0" for s in insts] + [s + "1" for s in insts]
            return dfs(length, pos + 1, syms + [var(v)], v + 1, doubled, tgt)
        return None

    lo = max(len(pre_syms) + (k - v0), 1)
    for length in range(lo, horizon + 1):
        got = dfs(length, len(pre_syms), list(pre_syms), v_in, list(insts_in), target_in)
        if got:
            return got
    return None


def brute_force_ovw(coloring: Coloring, k: int, horizon: int,
                    prefix: Optional[VarWord] = None,
                    override: bool = False) -> Optional[SolutionReport]:
    """Exhaustive oracle: least ordered word with k variable kinds passing
    check_solution at depth k, or None within the horizon."""
    if horizon > 20 and not override:
        raise PreconditionViolated("refusing horizon > 20 without override")
    got = find_word(coloring, k, horizon, prefix=prefix)
    if got is None:
        return None
    w, color = got
    res = check_solution(coloring, w, k)
    assert res.ok and res.color == color
    return SolutionReport(word=w, color=res.color, depth_checked=k, strategy="brute")
