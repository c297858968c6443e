"""Core calculus of binary strings, position sets, flips, and variable words.

Binary strings are plain ``str`` over '0'/'1' (the empty string is the empty
word). Position sets are strictly increasing tuples of non-negative ints.
Variable words are sequences over '0', '1', 'x0', 'x1', ... in which first
occurrences respect index order; a word is *ordered* when every occurrence of
x_i precedes every occurrence of x_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BaseNotZeroOnBlock,
    BlockOutOfOrder,
    OverlappingBlocks,
    PositionOutOfRange,
    PreconditionViolated,
    TooManyValues,
    UnboundVariable,
)

FinSet = tuple  # strictly increasing tuple[int, ...]


def check_bits(s: str) -> str:
    """Validate that s is a '0'/'1' string and return it."""
    if not isinstance(s, str) or any(ch not in "01" for ch in s):
        raise PreconditionViolated(f"not a binary string: {s!r}")
    return s


def as_finset(elems: Iterable[int], allow_empty: bool = False) -> FinSet:
    """Normalize an iterable of non-negative ints to a strict FinSet tuple."""
    xs = tuple(sorted(set(elems)))
    if not xs and not allow_empty:
        raise PreconditionViolated("empty position set not allowed here")
    if xs and (not all(isinstance(x, int) for x in xs) or xs[0] < 0):
        raise PreconditionViolated(f"not a set of non-negative ints: {elems!r}")
    return xs


def flip(bits: str, positions: Iterable[int]) -> str:
    """Toggle bits exactly on the given positions (empty set is identity)."""
    pos = tuple(positions)
    if not pos:
        return bits
    n = len(bits)
    if max(pos) >= n or min(pos) < 0:
        raise PositionOutOfRange(f"flip positions {pos} outside string of length {n}")
    chars = list(bits)
    for p in pos:
        chars[p] = "1" if chars[p] == "0" else "0"
    return "".join(chars)


def shortlex_key(s: Sequence) -> tuple:
    """Sort key realizing shortlex: shorter first, then lexicographic."""
    return (len(s), tuple(s) if not isinstance(s, str) else s)


def iter_bits(max_len: int, min_len: int = 0) -> Iterator[str]:
    """All binary strings with min_len <= length <= max_len, in shortlex order."""
    for n in range(min_len, max_len + 1):
        if n == 0:
            yield ""
        else:
            for v in range(1 << n):
                yield format(v, f"0{n}b")


def char_string(s: Iterable[int], length: int) -> str:
    """Characteristic string of a position set, of the given length."""
    members = set(s)
    if members and max(members) >= length:
        raise PositionOutOfRange(f"{sorted(members)} does not fit in length {length}")
    return "".join("1" if i in members else "0" for i in range(length))


def finset_key(s: Sequence[int]) -> tuple:
    """Canonical order on finite sets: shortlex on characteristic strings."""
    if not s:
        return (0, "")
    return (max(s) + 1, char_string(s, max(s) + 1))


def iter_finsets(ground: int, allow_empty: bool = False) -> Iterator[FinSet]:
    """Non-empty subsets of {0..ground-1} in canonical (finset_key) order."""
    if allow_empty:
        yield ()
    for length in range(1, ground + 1):
        # characteristic strings of this length end in '1' (max element fixed)
        for v in range(1 << (length - 1)):
            s = format(v, f"0{length - 1}b") + "1" if length > 1 else "1"
            yield tuple(i for i, ch in enumerate(s) if ch == "1")


VAR_PREFIX = "x"


def var(k: int) -> str:
    return f"{VAR_PREFIX}{k}"


def is_var(sym: str) -> bool:
    return sym.startswith(VAR_PREFIX)


def var_index(sym: str) -> int:
    return int(sym[len(VAR_PREFIX):])


@dataclass(frozen=True)
class VarWord:
    """Finite word over letters '0'/'1' and variables 'x0','x1',...

    Present variable indices are exactly 0..var_count-1 and first occurrences
    respect index order. Orderedness (all occurrences of x_i before any x_{i+1})
    is checked on demand, not assumed.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        seen: list[int] = []
        for sym in self.symbols:
            if sym in ("0", "1"):
                continue
            if not is_var(sym):
                raise PreconditionViolated(f"bad symbol {sym!r}")
            k = var_index(sym)
            if k < 0:
                raise PreconditionViolated(f"bad variable index in {sym!r}")
            if k > len(seen):
                raise PreconditionViolated(
                    f"first occurrence of {sym} before x{len(seen)}"
                )
            if k == len(seen):
                seen.append(k)

    @property
    def var_count(self) -> int:
        return len({var_index(s) for s in self.symbols if is_var(s)})

    def is_ordered(self) -> bool:
        """True when every occurrence of x_i precedes every occurrence of x_{i+1}."""
        last = -1
        for sym in self.symbols:
            if not is_var(sym):
                continue
            k = var_index(sym)
            if k < last:
                return False
            last = k
        return True

    def first_occurrence(self, k: int) -> Optional[int]:
        target = var(k)
        for i, sym in enumerate(self.symbols):
            if sym == target:
                return i
        return None

    def __len__(self) -> int:
        return len(self.symbols)


def word(symbols: Iterable[str]) -> VarWord:
    return VarWord(tuple(symbols))


def word_text(w: VarWord) -> str:
    """Serialize a word as space-separated symbols ('-' for the empty word)."""
    return " ".join(w.symbols) if w.symbols else "-"


def parse_word(text: str) -> VarWord:
    text = text.strip()
    if text in ("", "-"):
        return VarWord(())
    return VarWord(tuple(text.split()))


def instantiate(w: VarWord, values: str) -> str:
    """Substitute values for variables and truncate before the next variable.

    Every x_i with i < len(values) becomes values[i]; the result is cut just
    before the first occurrence of x_{len(values)}. When that variable does
    not occur (in particular when len(values) == var_count), the full
    substituted word is returned.
    """
    check_bits(values)
    k = len(values)
    if k > w.var_count:
        raise TooManyValues(f"{k} values for {w.var_count} variable kinds")
    out: list[str] = []
    for sym in w.symbols:
        if not is_var(sym):
            out.append(sym)
            continue
        j = var_index(sym)
        if j >= k:
            if j > k:
                # first-occurrence ordering makes this unreachable
                raise UnboundVariable(f"x{j} occurs before x{k}")
            break
        out.append(values[j])
    return "".join(out)


def _check_blocks(blocks: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    normalized = []
    for b in blocks:
        bs = tuple(sorted(b))
        if not bs:
            raise PreconditionViolated("empty block")
        normalized.append(bs)
    seen: set[int] = set()
    for b in normalized:
        if seen & set(b):
            raise OverlappingBlocks(f"blocks overlap at {sorted(seen & set(b))}")
        seen |= set(b)
    for lo, hi in zip(normalized, normalized[1:]):
        if max(lo) >= min(hi):
            raise BlockOutOfOrder(f"block {lo} not entirely below {hi}")
    return normalized


def assemble_from_blocks(mode: str, base, blocks: Sequence[Sequence[int]]) -> VarWord:
    """Assemble a variable word from disjoint increasing position blocks.

    mode 'ip': base is a horizon (int); the first block becomes constant-1
    positions, block i >= 1 becomes variable x_{i-1}, all else letter 0.

    mode 'aca': base is a binary string (zero on every block position);
    block i becomes variable x_i over the base, all else the base letter.
    """
    bl = _check_blocks(blocks)
    if mode == "ip":
        horizon = int(base)
        if bl and max(bl[-1]) >= horizon:
            raise PositionOutOfRange(f"blocks exceed horizon {horizon}")
        ones = set(bl[0]) if bl else set()
        where: dict[int, str] = {}
        for i, b in enumerate(bl[1:]):
            for p in b:
                where[p] = var(i)
        syms = []
        for n in range(horizon):
            if n in ones:
                syms.append("1")
            else:
                syms.append(where.get(n, "0"))
        return VarWord(tuple(syms))
    if mode == "aca":
        check_bits(base)
        where = {}
        for i, b in enumerate(bl):
            for p in b:
                if p >= len(base):
                    raise PositionOutOfRange(f"block position {p} beyond base")
                if base[p] != "0":
                    raise BaseNotZeroOnBlock(f"base has 1 at block position {p}")
                where[p] = var(i)
        syms = tuple(where.get(n, base[n]) for n in range(len(base)))
        return VarWord(syms)
    raise PreconditionViolated(f"unknown assembly mode {mode!r}")
