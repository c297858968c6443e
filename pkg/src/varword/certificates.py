"""Flip-pair pigeonhole, the greedy chain certificate, and witness extraction.

A certificate for a coloring c and base string rho is a shortlex-indexed
chain of strings tau^eta (eta ranging over words of length 1..|L|+1 on a
surviving color set L) plus the terminal string rho_tilde. Its guarantees:

  item 1  the chain is strictly prefix-ordered exactly along shortlex;
  item 2  rho_tilde has a 0 at the length of every chain string;
  item 3  flipping tau^eta at the lengths of eta's proper prefixes lands
          on color eta[-1];
  item 4  every extension of rho_tilde flipped inside P (the set of chain
          lengths) keeps its color inside L, up to a recorded horizon.

The builder is a greedy search with restarts: when no extension within
budget realizes the next requested color, that color is discarded and the
construction restarts from the flipped dead end, which is exactly what
makes item 4 hold on the explored range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence

from .colorings import Coloring
from .errors import (
    BudgetExhausted,
    CertificateViolation,
    NoRepeat,
    PreconditionViolated,
)
from .words import flip, iter_bits


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


@dataclass(frozen=True)
class WitnessTuple:
    """A flip-pair witness <P', P~, j> (plus a second color k in seq mode)."""

    p_prime: tuple[int, ...]
    p_tilde: tuple[int, ...]
    j: int
    k: Optional[int] = None


def encode_tuple(t: WitnessTuple, P: Sequence[int]) -> int:
    """Integer code: nested pairing of (P' bitmask over P, P~ bitmask, j[, k])."""
    idx = {p: i for i, p in enumerate(P)}
    m1 = sum(1 << idx[p] for p in t.p_prime)
    m2 = sum(1 << idx[p] for p in t.p_tilde)
    code = cantor_pair(cantor_pair(m1, m2), t.j)
    if t.k is not None:
        code = cantor_pair(code, t.k)
    return code


def decode_tuple(code: int, P: Sequence[int], seq: bool = False) -> WitnessTuple:
    k = None
    if seq:
        code, k = cantor_unpair(code)
    mm, j = cantor_unpair(code)
    m1, m2 = cantor_unpair(mm)
    p_prime = tuple(p for i, p in enumerate(P) if m1 >> i & 1)
    p_tilde = tuple(p for i, p in enumerate(P) if m2 >> i & 1)
    return WitnessTuple(p_prime, p_tilde, j, k)


def find_flip_pair(coloring: Coloring, rho: str, P: Sequence[int]) -> tuple[tuple, tuple]:
    """First flip pair P' < P~ of the pigeonhole walk over P.

    Walk colors l_i = c(rho flipped at {p_0..p_{i-1}}); the first repeat
    l_i = l_j yields P' = {p_0..p_{i-1}}, P~ = {p_i..p_{j-1}} with
    c(alpha) = c(alpha flipped at P~) for alpha = rho flipped at P'.
    """
    P = tuple(sorted(P))
    ell = coloring.colors
    if len(P) < ell:
        raise PreconditionViolated(f"|P|={len(P)} < colors={ell}")
    if P and P[-1] >= len(rho):
        raise PreconditionViolated("P outside the string")
    if any(rho[p] != "0" for p in P):
        raise PreconditionViolated("rho is not zero on P")
    walk = []
    for i in range(len(P) + 1):
        walk.append(coloring.eval(flip(rho, P[:i])))
        for h in range(len(walk) - 1):
            if walk[h] == walk[-1]:
                j = len(walk) - 1
                p_prime, p_tilde = P[:h], P[h:j]
                alpha = flip(rho, p_prime)
                assert coloring.eval(alpha) == coloring.eval(flip(alpha, p_tilde))
                return p_prime, p_tilde
    raise PreconditionViolated("no repeat found (unreachable when |P| >= colors)")


def _index_strings(L: Sequence[int]) -> list[tuple[int, ...]]:
    """All words on L of length 1..|L|+1 in shortlex order."""
    out: list[tuple[int, ...]] = []
    level = [()]
    for _ in range(len(L) + 1):
        level = [eta + (c,) for eta in level for c in L]
        out.extend(level)
    return out


@dataclass
class GammaCertificate:
    """Greedy chain certificate (see module docstring for the four items)."""

    universe: tuple[int, ...]          # color set the construction started from
    L: tuple[int, ...]                 # surviving colors, ascending
    index_order: tuple[tuple[int, ...], ...]
    gamma: dict                        # index word -> chain string tau^eta
    original: str                      # the rho the caller asked about
    base: str                          # base after the final restart
    rho_tilde: str
    reset_log: tuple = ()              # (removed color, restart base) pairs
    item4_horizon: Optional[int] = None  # None: item 4 holds at any horizon
    budget: int = 0

    @property
    def P(self) -> tuple[int, ...]:
        return tuple(sorted(len(self.gamma[eta]) for eta in self.index_order))


@dataclass
class ValidityCertificate:
    """(rho_tilde, P) pair backed by the chain certificate that produced it."""

    rho_tilde: str
    P: tuple[int, ...]
    gamma: GammaCertificate
    ell: int

    @property
    def item4_horizon(self):
        return self.gamma.item4_horizon


def _prefix_lengths(eta: tuple, gamma: dict) -> tuple[int, ...]:
    return tuple(len(gamma[eta[:j]]) for j in range(1, len(eta)))


def _search(coloring: Coloring, prefix: str, Q: tuple, target: int, budget: int,
            reserve: int = 0) -> Optional[str]:
    """Least extension tail (shortlex) whose Q-flip has the target color.

    reserve keeps that many positions of the domain free above the result
    (the terminal chain string still needs its appended 0 to be evaluable).
    """
    room = budget
    cap = coloring.max_len()
    if cap is not None:
        room = min(room, cap - reserve - len(prefix))
    if room < 0:
        return None
    for tail in iter_bits(room):
        cand = prefix + tail
        if coloring.eval(flip(cand, Q)) == target:
            return cand
    return None


def greedy_gamma(coloring: Coloring, rho: str, budget: int,
                 universe: Optional[Sequence[int]] = None) -> GammaCertificate:
    """Build the chain certificate for rho, restarting past missing colors.

    budget caps each search's extension tail; candidate strings are further
    clamped to the coloring's own domain bound. At most |universe|-1 restarts
    can happen; a failed search with a singleton color set raises
    BudgetExhausted with the partial state attached.
    """
    if budget < 1:
        raise PreconditionViolated("budget must be >= 1")
    if universe is None:
        if coloring.colors is None or coloring.colors < 2:
            raise PreconditionViolated("need at least 2 declared colors")
        universe = tuple(range(coloring.colors))
    else:
        universe = tuple(sorted(universe))
        if not universe:
            raise PreconditionViolated("empty color universe")
    L = list(universe)
    base = rho
    resets: list[tuple[int, str]] = []
    item4: Optional[int] = None
    cap = coloring.max_len()
    while True:
        order = _index_strings(L)
        gamma: dict = {}
        prev: Optional[str] = None
        failed = None
        for eta in order:
            Q = _prefix_lengths(eta, gamma)
            prefix = base if prev is None else prev + "0"
            reserve = 1 if (cap is not None and eta == order[-1]) else 0
            found = _search(coloring, prefix, Q, eta[-1], budget, reserve)
            if found is None:
                failed = (eta, Q, prev, prefix, reserve)
                break
            gamma[eta] = found
            prev = found
        if failed is None:
            rho_tilde = gamma[order[-1]] + "0"
            return GammaCertificate(
                universe=tuple(universe), L=tuple(L), index_order=tuple(order),
                gamma=gamma, original=rho, base=base, rho_tilde=rho_tilde,
                reset_log=tuple(resets), item4_horizon=item4, budget=budget,
            )
        eta, Q, prev, prefix, reserve = failed
        anchor = prev if prev is not None else base
        newbase = flip(anchor + "0", Q)
        # the failed search scanned every extension of newbase out to this length
        guarantee = len(prefix) + budget
        if cap is not None:
            guarantee = min(guarantee, cap - reserve)
        item4 = guarantee if item4 is None else min(item4, guarantee)
        if len(L) == 1:
            raise BudgetExhausted(
                f"no extension of {newbase!r} within budget has the last color {eta[-1]}",
                partial={"gamma": gamma, "L": tuple(L), "resets": tuple(resets), "base": base},
            )
        L.remove(eta[-1])
        resets.append((eta[-1], newbase))
        base = newbase


def build_validity(coloring: Coloring, rho: str, budget: int,
                   universe: Optional[Sequence[int]] = None) -> ValidityCertificate:
    """Chain certificate packaged as a (rho_tilde, P) validity certificate."""
    g = greedy_gamma(coloring, rho, budget, universe=universe)
    P = g.P
    ell = len(g.universe)
    if ell >= 2 and not len(P) < ell ** (ell + 2):
        raise CertificateViolation(f"|P|={len(P)} >= {ell}^{ell + 2}")
    if P and P[0] < len(rho):
        raise CertificateViolation("P dips below the base string")
    if any(g.rho_tilde[p] != "0" for p in P):
        raise CertificateViolation("rho_tilde not zero on P")
    return ValidityCertificate(rho_tilde=g.rho_tilde, P=P, gamma=g, ell=ell)


@dataclass
class Violation:
    item: int
    detail: str
    flip_set: tuple = ()
    tau: str = ""


@dataclass
class VerificationReport:
    ok: bool
    item_ok: dict
    violations: list
    checks: int
    item4_mode: str
    item4_subsets: int
    item4_extensions: int


def verify_certificate(cert, coloring: Coloring, horizon: int,
                       subset_budget: int = 200, seed: int = 0,
                       exhaustive_limit: int = 10 ** 6) -> VerificationReport:
    """Check items 1-3 exactly and item 4 over subsets x extensions.

    Item 4 is exhaustive over all 2^|P| flip subsets whenever that many,
    times the extension count up to the horizon, stays within
    exhaustive_limit; otherwise subset_budget subsets are sampled (seeded).
    """
    g = cert.gamma if isinstance(cert, ValidityCertificate) else cert
    if horizon < len(g.rho_tilde):
        raise PreconditionViolated(f"horizon {horizon} < |rho_tilde| = {len(g.rho_tilde)}")
    violations: list[Violation] = []
    item_ok = {1: True, 2: True, 3: True, 4: True}

    def bad(item, detail, flip_set=(), tau=""):
        item_ok[item] = False
        if len(violations) < 200:
            violations.append(Violation(item, detail, tuple(flip_set), tau))

    # item 1: strict prefix chain along shortlex, rooted at base/original
    if not g.base.startswith(g.original):
        bad(1, "base does not extend the original rho")
    strings = [g.gamma[eta] for eta in g.index_order]
    if strings and not strings[0].startswith(g.base):
        bad(1, "first chain string does not extend the base")
    for a, b in zip(strings, strings[1:]):
        if not (len(a) < len(b) and b.startswith(a)):
            bad(1, f"chain strings {a!r} -> {b!r} not strictly prefix-ordered")

    # item 2: rho_tilde is 0 at every chain length
    for eta in g.index_order:
        pos = len(g.gamma[eta])
        if pos >= len(g.rho_tilde) or g.rho_tilde[pos] != "0":
            bad(2, f"rho_tilde[{pos}] != 0")
    if g.rho_tilde != g.gamma[g.index_order[-1]] + "0":
        bad(2, "rho_tilde is not the last chain string plus 0")

    # item 3: flip at proper-prefix lengths lands on the requested color
    checks = 0
    for eta in g.index_order:
        Q = _prefix_lengths(eta, g.gamma)
        got = coloring.eval(flip(g.gamma[eta], Q))
        checks += 1
        if got != eta[-1]:
            bad(3, f"color {got} != {eta[-1]} at index {eta}", Q, g.gamma[eta])

    # item 4: flips of extensions stay inside L
    P = g.P
    allowed = set(g.L)
    n_ext = (1 << (horizon - len(g.rho_tilde) + 1)) - 1
    if (1 << len(P)) * n_ext <= exhaustive_limit:
        masks = range(1 << len(P))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        masks = [rng.getrandbits(len(P)) for _ in range(subset_budget)]
        mode = "sampled"
    n_subsets = 0
    for mask in masks:
        Q = tuple(p for i, p in enumerate(P) if mask >> i & 1)
        n_subsets += 1
        for tail in iter_bits(horizon - len(g.rho_tilde)):
            tau = g.rho_tilde + tail
            checks += 1
            if coloring.eval(flip(tau, Q)) not in allowed:
                bad(4, f"color outside L={sorted(allowed)}", Q, tau)
    return VerificationReport(
        ok=all(item_ok.values()), item_ok=item_ok, violations=violations,
        checks=checks, item4_mode=mode, item4_subsets=n_subsets,
        item4_extensions=n_ext,
    )


def extract_witness(cert: ValidityCertificate, coloring: Coloring, sigma: str,
                    seq_next: Optional[Coloring] = None,
                    check: bool = True) -> WitnessTuple:
    """Walk the chain certificate to a flip-pair witness for sigma.

    l_0 = c(sigma), p_i = |tau^(l_0..l_i)|, l_{i+1} = c(sigma flipped at
    {p_0..p_i}); the first repeat l_i = l_j gives <{p_0..p_{i-1}},
    {p_i..p_{j-1}}, l_i>. In seq mode the next coloring's value on the
    P'-flip is carried as the extra field k. check=False skips the triple
    equality re-evaluation (hot inner loops; the walk already implies it).
    """
    g = cert.gamma
    if not sigma.startswith(cert.rho_tilde):
        raise PreconditionViolated("sigma does not extend rho_tilde")
    allowed = set(g.L)
    walk: list[int] = []
    ps: list[int] = []
    for i in range(len(g.L) + 1):
        color = coloring.eval(flip(sigma, ps[:i]))
        if color not in allowed:
            raise NoRepeat(f"walk color {color} outside L={sorted(allowed)} at {sigma!r}")
        for h in range(len(walk)):
            if walk[h] == color:
                p_prime, p_tilde = tuple(ps[:h]), tuple(ps[h:i])
                alpha = None
                if check or seq_next is not None:
                    alpha = flip(sigma, p_prime)
                j = walk[h]
                if check and not (coloring.eval(alpha) == j
                                  and coloring.eval(flip(alpha, p_tilde)) == j
                                  and coloring.eval(alpha[: p_tilde[0]]) == j):
                    raise CertificateViolation("witness triple equality failed")
                k = seq_next.eval(alpha) if seq_next is not None else None
                return WitnessTuple(p_prime, p_tilde, j, k)
        walk.append(color)
        ps.append(len(g.gamma[tuple(walk)]))
    raise NoRepeat("no repeat within |L|+1 walk steps (unreachable)")
