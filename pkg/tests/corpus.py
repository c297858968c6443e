"""Shared test corpus: the rule colorings plus ten seeded tables.

The seeded tables color only strings of length <= 2 (default 0 above), so
certificate builds reset early and stay well inside the horizon-12 domain.
"""

import random

from varword.colorings import RuleColoring, TableColoring
from varword.words import iter_bits

TABLE_HORIZON = 12


def constant2():
    return RuleColoring("strings", 2, "constant", {"value": 0})


def length_mod2():
    return RuleColoring("strings", 2, "length_mod")


def popcount2():
    return RuleColoring("strings", 2, "popcount_mod")


def popcount3():
    return RuleColoring("strings", 3, "popcount_mod")


def seeded_table(seed):
    rng = random.Random(seed)
    entries = {s: rng.randrange(2) for s in iter_bits(2)}
    return TableColoring("strings", 2, TABLE_HORIZON, entries, 0)


def string_corpus():
    base = [
        ("constant", constant2()),
        ("length_mod2", length_mod2()),
        ("popcount2", popcount2()),
        ("popcount3", popcount3()),
    ]
    return base + [(f"table{s}", seeded_table(s)) for s in range(10)]


def card_mod2():
    return RuleColoring("finsets", 2, "card_mod")


def min_mod2():
    return RuleColoring("finsets", 2, "min_mod")


def seeded_finset_table(seed, horizon=8, colors=2):
    rng = random.Random(seed)
    entries = {}
    for v in range(1, 1 << horizon):
        s = tuple(i for i in range(horizon) if v >> i & 1)
        entries[s] = rng.randrange(colors)
    return TableColoring("finsets", colors, horizon, entries, 0)
