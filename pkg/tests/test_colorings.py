import pytest

from varword.colorings import (
    RuleColoring,
    SeqColoring,
    TableColoring,
    parse_coloring,
    serialize_coloring,
)
from varword.errors import (
    ColoringSemanticError,
    ColoringSyntaxError,
    DomainMismatch,
    HorizonExceeded,
)
from varword.words import iter_bits

from corpus import seeded_table


def test_rule_examples():
    assert RuleColoring("strings", 2, "popcount_mod").eval("0110") == 0
    assert RuleColoring("strings", 3, "length_mod").eval("01101") == 2
    table = TableColoring("strings", 2, 4, {"01": 1}, 0)
    assert table.eval("01") == 1
    assert table.eval("00") == 0


def test_builtin_rules():
    assert RuleColoring("strings", 2, "constant", {"value": 1}).eval("0") == 1
    pt = RuleColoring("strings", 2, "prefix_table", {"map": "01:1,1:0", "default": 0})
    assert pt.eval("011") == 1
    assert pt.eval("10") == 0
    assert pt.eval("") == 0
    assert RuleColoring("finsets", 2, "min_mod").eval((2, 5)) == 0
    assert RuleColoring("finsets", 2, "card_mod").eval((1, 2, 3)) == 1


def test_domain_and_horizon_guards():
    with pytest.raises(DomainMismatch):
        RuleColoring("strings", 2, "popcount_mod").eval((1, 2))
    with pytest.raises(HorizonExceeded):
        TableColoring("strings", 2, 3, {}, 0).eval("0000")
    with pytest.raises(ColoringSemanticError):
        RuleColoring("finsets", 2, "popcount_mod")


def test_parse_rule():
    c = parse_coloring("coloring domain=strings colors=2 kind=rule\nrule popcount_mod\n")
    assert c.colors == 2 and c.eval("1") == 1


def test_parse_colors_zero_is_semantic_error():
    with pytest.raises(ColoringSemanticError):
        parse_coloring("coloring domain=strings colors=0 kind=rule\nrule popcount_mod\n")


def test_parse_syntax_error_carries_line():
    with pytest.raises(ColoringSyntaxError) as err:
        parse_coloring("coloring domain=strings colors=2 kind=table\nhorizon 4\ndefault 0\nentry\n")
    assert err.value.line == 4


def test_duplicate_table_key():
    text = ("coloring domain=strings colors=2 kind=table\nhorizon 4\ndefault 0\n"
            "entry 01 1\nentry 01 0\n")
    with pytest.raises(ColoringSemanticError):
        parse_coloring(text)


def test_table_round_trip_canonical():
    c = TableColoring("strings", 2, 6, {"1": 1, "": 1, "010": 1}, 0)
    text = serialize_coloring(c)
    # canonical order: shortlex on keys, epsilon first
    lines = [l for l in text.splitlines() if l.startswith("entry")]
    assert lines == ["entry - 1", "entry 1 1", "entry 010 1"]
    assert serialize_coloring(parse_coloring(text)) == text


def test_finset_table_round_trip():
    c = TableColoring("finsets", 2, 5, {(0, 2): 1, (1,): 1}, 0)
    text = serialize_coloring(c)
    assert serialize_coloring(parse_coloring(text)) == text
    assert parse_coloring(text).eval((0, 2)) == 1


def test_determinism_thousand_evals():
    c = seeded_table(3)
    inputs = list(iter_bits(6))[:50]
    baseline = [c.eval(s) for s in inputs]
    for _ in range(20):
        assert [c.eval(s) for s in inputs] == baseline


def test_table_total_within_horizon():
    c = seeded_table(0)
    for s in iter_bits(c.horizon):
        assert c.eval(s) in (0, 1)


def test_seq_coloring_validation():
    a = RuleColoring("strings", 2, "popcount_mod")
    b = RuleColoring("strings", 2, "length_mod")
    assert len(SeqColoring([a, b])) == 2
    with pytest.raises(ColoringSemanticError):
        SeqColoring([a, RuleColoring("strings", 3, "length_mod")])
