"""Adversarial coloring builder: clause system plus Moser-Tardos resampling.

Each target is a finite ordered variable word treated as ending at a fresh
variable boundary. For every continuation tau within the horizon and both
colors i, one clause demands that some full instantiation leaf sigma gives
c(sigma tau) = i; a satisfying 0/1 assignment over all strings up to the
horizon is therefore a coloring under which no extension of any target stays
monochromatic past its leaves. Assignments are found by resampling the
least violated clause, seeded and fully deterministic.
"""

from __future__ import annotations

import heapq
from array import array
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .colorings import TableColoring
from .errors import (
    LeafLengthExceedsHorizon,
    PreconditionViolated,
    ResampleBudgetExceeded,
)
from .words import VarWord, instantiate

MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: the documented 64-bit generator behind every seeded run."""

    def __init__(self, seed: int):
        self.state = seed & MASK64
        self._bits = 0
        self._have = 0

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bit(self) -> int:
        if self._have == 0:
            self._bits = self.next_u64()
            self._have = 64
        b = self._bits & 1
        self._bits >>= 1
        self._have -= 1
        return b


def rank(s: str) -> int:
    """Shortlex rank of a binary string (epsilon is 0)."""
    n = len(s)
    return (1 << n) - 1 + (int(s, 2) if n else 0)


def unrank(r: int) -> str:
    n = (r + 1).bit_length() - 1
    if n == 0:
        return ""
    return format(r - ((1 << n) - 1), f"0{n}b")


@dataclass(frozen=True)
class AdversaryConfig:
    n_base: int                 # variable-count threshold N
    horizon: int                # longest string colored
    alpha: float = 0.5          # recorded exponent; the budget does the work here
    seed: int = 0
    max_resamples: int = 10 ** 6

    def __post_init__(self):
        if self.n_base < 1:
            raise PreconditionViolated("threshold must be >= 1")
        if not 0 < self.alpha < 1:
            raise PreconditionViolated("alpha must lie in (0, 1)")


@dataclass(frozen=True)
class AdversaryTarget:
    index: int                  # e
    word: VarWord
    leaves: tuple[str, ...]     # all full instantiations, mask order
    leaf_len: int

    @classmethod
    def build(cls, e: int, w: VarWord, n_base: int) -> "AdversaryTarget":
        if not w.is_ordered():
            raise PreconditionViolated(f"target {e} is not ordered")
        v = w.var_count
        if v != n_base + e:
            raise PreconditionViolated(
                f"target {e} has {v} variable kinds, needs {n_base + e}"
            )
        leaves = tuple(
            instantiate(w, "".join("1" if m >> t & 1 else "0" for t in range(v)))
            for m in range(1 << v)
        )
        if len(set(leaves)) != len(leaves):
            raise PreconditionViolated(f"target {e} leaves collide")
        return cls(e, w, leaves, len(w))


def make_targets(words: Sequence[VarWord], n_base: int) -> list[AdversaryTarget]:
    return [AdversaryTarget.build(e, w, n_base) for e, w in enumerate(words)]


@dataclass
class ClauseSystem:
    """Flat clause store: per clause a var-id slice and a required bit."""

    horizon: int
    var_count: int                      # all strings of length <= horizon
    offsets: array                      # clause i spans vars[offsets[i]:offsets[i+1]]
    vars: array
    bits: bytearray                     # required bit of clause i
    labels: list                        # (e, tau, i) per clause
    incidence: dict = field(default_factory=dict)   # var id -> tuple of clause ids

    def __len__(self):
        return len(self.bits)

    def clause_vars(self, cid: int):
        return self.vars[self.offsets[cid]:self.offsets[cid + 1]]

    def satisfied(self, cid: int, assignment) -> bool:
        want = self.bits[cid]
        return any(assignment[v] == want for v in self.clause_vars(cid))


def build_clause_system(targets: Sequence[AdversaryTarget], config: AdversaryConfig) -> ClauseSystem:
    """One clause per (target, continuation tau, color), plus incidence.

    Audited afterwards: within each leaf-size class a variable sits in at
    most two clauses (one per color).
    """
    L = config.horizon
    offsets = array("q", [0])
    var_ids = array("q")
    bits = bytearray()
    labels = []
    for t in targets:
        if t.leaf_len > L:
            raise LeafLengthExceedsHorizon(
                f"target {t.index} leaves of length {t.leaf_len} > horizon {L}"
            )
        leaf_ranks = [rank(s) for s in t.leaves]
        for tau_len in range(L - t.leaf_len + 1):
            base_shift = tau_len
            for tv in range(1 << tau_len) if tau_len else (0,):
                tau = format(tv, f"0{tau_len}b") if tau_len else ""
                ids = [rank(s + tau) for s in t.leaves]
                for color in (0, 1):
                    var_ids.extend(ids)
                    offsets.append(len(var_ids))
                    bits.append(color)
                    labels.append((t.index, tau, color))
    system = ClauseSystem(
        horizon=L, var_count=(1 << (L + 1)) - 1, offsets=offsets,
        vars=var_ids, bits=bits, labels=labels,
    )
    incidence: dict[int, list[int]] = {}
    for cid in range(len(system)):
        for v in system.clause_vars(cid):
            incidence.setdefault(v, []).append(cid)
    system.incidence = {v: tuple(cs) for v, cs in incidence.items()}
    audit_degrees(system, targets)
    return system


def audit_degrees(system: ClauseSystem, targets: Sequence[AdversaryTarget]) -> dict:
    """Exhaustive incidence audit: per variable and leaf-size class, <= 2."""
    size_of = {t.index: 1 << t.word.var_count for t in targets}
    worst: dict[int, int] = {}
    for v, cids in system.incidence.items():
        per_class: dict[int, int] = {}
        for cid in cids:
            e = system.labels[cid][0]
            size = size_of[e]
            per_class[size] = per_class.get(size, 0) + 1
        for size, count in per_class.items():
            if count > 2:
                raise PreconditionViolated(
                    f"variable {unrank(v)!r} sits in {count} clauses of size {size}"
                )
            worst[size] = max(worst.get(size, 0), count)
    return worst


@dataclass
class MoserTardosResult:
    assignment: bytearray
    resamples: int
    converged: bool
    violated: list            # clause ids still violated (budget overruns)


def moser_tardos(system: ClauseSystem, seed: int = 0,
                 max_resamples: int = 10 ** 6) -> MoserTardosResult:
    """Seeded resampling of the least-index violated clause until none is.

    Raises ResampleBudgetExceeded (partial result attached) past the budget.
    """
    rng = SplitMix64(seed)
    assignment = bytearray(rng.bit() for _ in range(system.var_count))
    violated = set()
    for cid in range(len(system)):
        if not system.satisfied(cid, assignment):
            violated.add(cid)
    heap = list(violated)
    heapq.heapify(heap)
    count = 0
    while violated:
        cid = heapq.heappop(heap)
        if cid not in violated:
            continue
        if count >= max_resamples:
            result = MoserTardosResult(assignment, count, False, sorted(violated | {cid}))
            raise ResampleBudgetExceeded(
                f"still {len(result.violated)} violated after {count} resamples",
                partial=result,
            )
        count += 1
        changed = system.clause_vars(cid)
        for v in changed:
            assignment[v] = rng.bit()
        for v in set(changed):
            for other in system.incidence[v]:
                if system.satisfied(other, assignment):
                    violated.discard(other)
                elif other not in violated:
                    violated.add(other)
                    heapq.heappush(heap, other)
        if cid in violated and not system.satisfied(cid, assignment):
            heapq.heappush(heap, cid)
    return MoserTardosResult(assignment, count, True, [])


def assignment_coloring(assignment: bytearray, horizon: int) -> TableColoring:
    """Pack a rank-indexed assignment into a table coloring (default 0)."""
    entries = {}
    for r, bit in enumerate(assignment):
        if bit:
            entries[unrank(r)] = 1
    return TableColoring("strings", 2, horizon, entries, 0)


@dataclass
class AdversaryReport:
    ok: bool
    per_target: list          # (e, ok, first failing tau or None)
    checks: int


def verify_adversary(coloring, targets: Sequence[AdversaryTarget], horizon: int) -> AdversaryReport:
    """Both colors must occur on {c(sigma tau)} for every continuation tau."""
    per = []
    checks = 0
    for t in targets:
        fail_tau = None
        for tau_len in range(horizon - t.leaf_len + 1):
            if fail_tau is not None:
                break
            for tv in range(1 << tau_len) if tau_len else (0,):
                tau = format(tv, f"0{tau_len}b") if tau_len else ""
                seen = set()
                for s in t.leaves:
                    seen.add(coloring.eval(s + tau))
                    checks += 1
                    if len(seen) == 2:
                        break
                if len(seen) < 2:
                    fail_tau = tau
                    break
        per.append((t.index, fail_tau is None, fail_tau))
    return AdversaryReport(all(ok for _, ok, _ in per), per, checks)
