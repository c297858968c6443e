"""Iterated level colorings, witness chains, and solution assembly.

Level 0 is the input coloring on the empty base. Each round builds a
validity certificate for the current level's coloring and derives the next
level's coloring, whose value on sigma is the integer code of the witness
tuple the certificate extracts for sigma. Tuple codes chain: a level-(i+1)
value's j field is the level-i value it was built from, so a realized top
value decodes backward into a full chain, and flipping the final base at
the chain's blocks leaves every truncation at a block minimum on one color.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .certificates import (
    ValidityCertificate,
    WitnessTuple,
    build_validity,
    decode_tuple,
    encode_tuple,
    extract_witness,
)
from .colorings import STRINGS, Coloring, DerivedColoring, SeqColoring
from .errors import (
    BudgetExhausted,
    DomainMismatch,
    EmptyTree,
    HomogeneityFailure,
    NoRepeat,
    PreconditionViolated,
)
from .search import SolutionReport, check_solution
from .words import assemble_from_blocks, flip, iter_bits

# a level's color universe may not blow past this many chain strings
MAX_FAMILY = 200_000


@dataclass
class Level:
    index: int
    base: str                       # rho_tilde_i
    coloring: Coloring              # c_i
    color_set: tuple                # observed/declared range L_i
    cert: Optional[ValidityCertificate] = None
    saturation: Optional[tuple[str, ...]] = None


@dataclass
class LevelSequence:
    levels: list
    seq_mode: bool = False

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def cert(self, i: int) -> ValidityCertificate:
        return self.levels[i].cert


def derive_level_coloring(cert: ValidityCertificate, coloring: Coloring,
                          seq_next: Optional[Coloring] = None,
                          label: str = "level") -> DerivedColoring:
    """Next-level coloring: sigma -> code of the extracted witness tuple.

    Evaluations are memoized per derived instance; the level machinery
    revisits the same flips of the same strings constantly.
    """
    P = cert.P
    cache: dict = {}

    def fn(sigma):
        code = cache.get(sigma)
        if code is None:
            t = extract_witness(cert, coloring, sigma, seq_next=seq_next, check=False)
            code = encode_tuple(t, P)
            cache[sigma] = code
        return code

    return DerivedColoring(STRINGS, fn, colors=None, label=label,
                           length_bound=coloring.max_len())


def _scan_range(coloring: Coloring, base: str, depth: int) -> tuple:
    """Observed values on extensions of base, scanning tail layers until a
    whole layer brings nothing new (at least two layers, at most depth)."""
    cap = coloring.max_len()
    if cap is not None:
        depth = min(depth, cap - len(base))
    seen: set = set()
    for layer in range(max(depth, 0) + 1):
        new = False
        for tail in iter_bits(layer, min_len=layer):
            if coloring.eval(base + tail) not in seen:
                seen.add(coloring.eval(base + tail))
                new = True
        if layer >= 2 and not new:
            break
    return tuple(sorted(seen))


def _saturate(coloring: Coloring, base: str, budget: int) -> tuple[str, ...]:
    """Strictly increasing prefixes past base collecting one representative
    per attained value; past the last one no explored extension attains a
    new value."""
    cap = coloring.max_len()
    first = base + "0"
    if cap is not None and len(first) > cap:
        raise BudgetExhausted("no room for a saturation prefix", partial=base)
    prefixes = [first]
    seen = {coloring.eval(first)}
    while True:
        cur = prefixes[-1]
        room = budget if cap is None else min(budget, cap - len(cur))
        found = None
        for tail in iter_bits(max(room, 0)):
            value = coloring.eval(cur + tail)
            if value not in seen:
                found = cur + tail
                break
        if found is None:
            return tuple(prefixes)
        prefixes.append(found)
        seen.add(coloring.eval(found))


def _family_size(u: int) -> int:
    return sum(u ** i for i in range(1, u + 2))


def compute_levels(coloring: Union[Coloring, SeqColoring, Sequence[Coloring]],
                   depth: int, budget: int, saturation: bool = False,
                   scan_depth: Optional[int] = None) -> LevelSequence:
    """Build levels 0..depth by alternating certificates and derived colorings.

    In seq mode (a coloring sequence) the level-(i+1) tuples carry the
    (i+1)-th member's color of the P'-flip as an extra field. On budget
    exhaustion the partial sequence rides in the error payload.
    """
    if depth < 0:
        raise PreconditionViolated("depth must be >= 0")
    if isinstance(coloring, (list, tuple)):
        coloring = SeqColoring(coloring)
    seq_mode = isinstance(coloring, SeqColoring)
    if seq_mode and len(coloring) < depth + 1:
        raise PreconditionViolated(f"need {depth + 1} colorings for depth {depth}")
    c0 = coloring[0] if seq_mode else coloring
    if c0.domain != STRINGS:
        raise DomainMismatch("levels run over string colorings")
    seq = LevelSequence([Level(0, "", c0, tuple(range(c0.colors)))], seq_mode)
    sd = scan_depth if scan_depth is not None else min(budget, 8)
    for i in range(depth):
        lv = seq.levels[i]
        base = lv.base
        if saturation:
            lv.saturation = _saturate(lv.coloring, base, budget)
            base = lv.saturation[-1]
        if _family_size(len(lv.color_set)) > MAX_FAMILY:
            raise BudgetExhausted(
                f"level {i} color set of size {len(lv.color_set)} is out of reach",
                partial=seq,
            )
        try:
            vc = build_validity(lv.coloring, base, budget, universe=lv.color_set)
        except BudgetExhausted as exc:
            raise BudgetExhausted(f"level {i}: {exc}", partial=seq) from exc
        lv.cert = vc
        nxt = coloring[i + 1] if seq_mode else None
        derived = derive_level_coloring(vc, lv.coloring, seq_next=nxt, label=f"level{i + 1}")
        universe = _scan_range(derived, vc.rho_tilde, sd)
        seq.levels.append(Level(i + 1, vc.rho_tilde, derived, universe))
    return seq


@dataclass
class WitnessChain:
    j0: int
    tuples: list          # WitnessTuple per level, blocks P~_0..P~_{n-1}
    codes: list           # integer code of each tuple

    def __len__(self):
        return len(self.tuples)


def build_witness_chain(seq: LevelSequence, n: int) -> WitnessChain:
    """Decode the realized top value at level n down to its base color.

    Every code's j field is its unique immediate predecessor, so the chain
    is the backward orbit of c_n(rho_tilde_n).
    """
    if n < 1:
        raise PreconditionViolated("chains need n >= 1")
    if seq.depth < n:
        raise PreconditionViolated(f"levels depth {seq.depth} < {n}")
    top_level = seq.levels[n]
    try:
        code = top_level.coloring.eval(top_level.base)
    except NoRepeat as exc:
        raise EmptyTree(f"no realized tuple at level {n}: {exc}") from exc
    codes: list[int] = []
    tuples: list[WitnessTuple] = []
    for i in range(n, 0, -1):
        t = decode_tuple(code, seq.levels[i - 1].cert.P, seq=seq.seq_mode)
        tuples.append(t)
        codes.append(code)
        code = t.j
    tuples.reverse()
    codes.reverse()
    return WitnessChain(j0=code, tuples=tuples, codes=codes)


def assemble_solution(seq: LevelSequence, chain: WitnessChain,
                      coloring: Optional[Coloring] = None) -> SolutionReport:
    """Flip the final base at the chain's P' sets and read off the word.

    Before returning, the full homogeneity property is checked exhaustively:
    every union of chain blocks, truncated at any block minimum past the
    first or at the full length, must keep the chain's base color.
    """
    n = len(chain.tuples)
    base_col = coloring if coloring is not None else seq.levels[0].coloring
    X = seq.levels[n].base
    p_prime: set[int] = set()
    for t in chain.tuples:
        p_prime |= set(t.p_prime)
    Y = flip(X, sorted(p_prime))
    blocks = [t.p_tilde for t in chain.tuples]
    points = [blocks[j][0] for j in range(1, n)] + [len(Y)]
    for mask in range(1 << n):
        J = sorted({p for j in range(n) if mask >> j & 1 for p in blocks[j]})
        flipped = flip(Y, J)
        for p in points:
            got = base_col.eval(flipped[:p])
            if got != chain.j0:
                raise HomogeneityFailure(
                    f"color {got} != {chain.j0} at flip set {J}, point {p}",
                    flip_set=tuple(J), point=p,
                )
    w = assemble_from_blocks("aca", Y, blocks[1:])
    res = check_solution(base_col, w, n - 1)
    if not res.ok or (n > 1 and res.color != chain.j0):
        raise HomogeneityFailure("assembled word failed its own check")
    return SolutionReport(word=w, color=chain.j0, depth_checked=n - 1,
                          strategy="levels", base=Y, blocks=tuple(blocks),
                          chain=chain)
