import pytest
from hypothesis import given, strategies as st

from varword.errors import (
    BaseNotZeroOnBlock,
    BlockOutOfOrder,
    OverlappingBlocks,
    PositionOutOfRange,
    PreconditionViolated,
    TooManyValues,
)
from varword.words import (
    VarWord,
    assemble_from_blocks,
    char_string,
    flip,
    instantiate,
    iter_bits,
    iter_finsets,
    parse_word,
    shortlex_key,
    word_text,
)

bits = st.text(alphabet="01", max_size=12)


def positions_of(s):
    return st.sets(st.integers(min_value=0, max_value=max(len(s) - 1, 0)), max_size=len(s))


def test_flip_examples():
    assert flip("0000", ()) == "0000"
    assert flip("0000", (1, 3)) == "0101"
    assert flip(flip("0110", (0, 2)), (0, 2)) == "0110"


def test_flip_out_of_range():
    with pytest.raises(PositionOutOfRange):
        flip("010", (3,))


@given(bits.flatmap(lambda s: st.tuples(st.just(s), positions_of(s))))
def test_flip_involution(case):
    s, f = case
    assert flip(flip(s, f), f) == s


@given(bits.flatmap(lambda s: st.tuples(st.just(s), positions_of(s), positions_of(s))))
def test_flip_disjoint_composition(case):
    s, f, g = case
    g = g - f
    assert flip(flip(s, f), g) == flip(s, sorted(f | g))


def test_shortlex_is_total_order():
    sample = list(iter_bits(4))
    keys = [shortlex_key(s) for s in sample]
    assert sorted(keys) == sorted(set(keys))
    for a in sample[:10]:
        for b in sample[:10]:
            assert (shortlex_key(a) < shortlex_key(b)) == (not shortlex_key(b) <= shortlex_key(a))


def test_word_validation():
    VarWord(("1", "x0", "x0", "0", "x1"))
    with pytest.raises(PreconditionViolated):
        VarWord(("x1",))  # x1 before x0
    with pytest.raises(PreconditionViolated):
        VarWord(("2",))


def test_orderedness_flag():
    assert VarWord(("x0", "x1")).is_ordered()
    assert not VarWord(("x0", "x1", "x0")).is_ordered()


def test_instantiate_examples():
    w = VarWord(("1", "x0", "x0", "0", "x1"))
    assert instantiate(w, "1") == "1110"
    assert instantiate(w, "10") == "11100"
    assert instantiate(w, "") == "1"


def test_instantiate_too_many_values():
    with pytest.raises(TooManyValues):
        instantiate(VarWord(("x0",)), "01")


@st.composite
def ordered_words(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    syms = []
    v = 0
    for _ in range(n):
        choices = ["0", "1"]
        if v:
            choices.append(f"x{v - 1}")
        choices.append(f"x{v}")
        sym = draw(st.sampled_from(choices))
        if sym == f"x{v}":
            v += 1
        syms.append(sym)
    return VarWord(tuple(syms))


@given(ordered_words(), st.data())
def test_instantiate_prefix_monotone(w, data):
    if w.var_count < 2:
        return
    blen = data.draw(st.integers(min_value=1, max_value=w.var_count))
    b = data.draw(st.text(alphabet="01", min_size=blen, max_size=blen))
    full = instantiate(w, b)
    for alen in range(len(b)):
        assert full.startswith(instantiate(w, b[:alen]))


def test_assemble_ip():
    w = assemble_from_blocks("ip", 6, [(0,), (2,), (3, 4)])
    assert w.symbols == ("1", "0", "x0", "x1", "x1", "0")
    assert w.is_ordered()


def test_assemble_aca():
    w = assemble_from_blocks("aca", "001000000", [(3,), (6, 7)])
    assert w.symbols == ("0", "0", "1", "x0", "0", "0", "x1", "x1", "0")
    assert w.is_ordered()


def test_assemble_degenerate():
    w = assemble_from_blocks("aca", "00", [])
    assert w.symbols == ("0", "0")
    assert w.var_count == 0


def test_assemble_errors():
    with pytest.raises(OverlappingBlocks):
        assemble_from_blocks("ip", 6, [(0, 2), (2,)])
    with pytest.raises(BlockOutOfOrder):
        assemble_from_blocks("ip", 6, [(3,), (1,)])
    with pytest.raises(BaseNotZeroOnBlock):
        assemble_from_blocks("aca", "01", [(1,)])
    with pytest.raises(PositionOutOfRange):
        assemble_from_blocks("aca", "00", [(5,)])


def test_word_text_round_trip():
    for text in ("-", "x0", "1 x0 x0 0 x1"):
        assert word_text(parse_word(text)) == text


def test_char_string_and_finset_order():
    assert char_string((0, 2), 4) == "1010"
    first = list(iter_finsets(3))
    assert first == [(0,), (1,), (0, 1), (2,), (1, 2), (0, 2), (0, 1, 2)]
