import pytest

from varword.certificates import decode_tuple, encode_tuple, verify_certificate
from varword.colorings import TableColoring
from varword.errors import BudgetExhausted, PreconditionViolated
from varword.levels import (
    assemble_solution,
    build_witness_chain,
    compute_levels,
    derive_level_coloring,
)
from varword.search import check_solution
from varword.words import iter_bits, word_text

from corpus import constant2, length_mod2, popcount2, popcount3, seeded_table


def test_depth_zero_is_base_only():
    seq = compute_levels(constant2(), 0, 8)
    assert seq.depth == 0
    assert seq.levels[0].base == ""
    assert seq.levels[0].coloring is not None
    assert seq.levels[0].cert is None


def test_constant_depth_two_levels_verify():
    seq = compute_levels(constant2(), 2, 16)
    assert [lv.base for lv in seq.levels] == ["", "000", "00000"]
    for lv in seq.levels[:2]:
        rep = verify_certificate(lv.cert, lv.coloring, len(lv.cert.rho_tilde) + 2)
        assert rep.ok


def test_level_invariants_on_corpus_sample():
    for col in (constant2(), length_mod2(), popcount2()):
        seq = compute_levels(col, 2, 12)
        for i in range(seq.depth):
            cert = seq.levels[i].cert
            nxt = seq.levels[i + 1].base
            assert nxt.startswith(seq.levels[i].base) and len(nxt) > len(seq.levels[i].base)
            assert all(len(seq.levels[i].base) <= p < len(nxt) for p in cert.P)
            assert all(nxt[p] == "0" for p in cert.P)


def test_derive_level_coloring_constant():
    seq = compute_levels(constant2(), 1, 8)
    cert = seq.levels[0].cert
    derived = derive_level_coloring(cert, constant2())
    from varword.certificates import WitnessTuple
    expected = encode_tuple(WitnessTuple((), (1,), 0), cert.P)
    assert derived.eval("000") == expected
    # constant base gives a constant level-1 coloring
    values = {derived.eval("000" + t) for t in iter_bits(4)}
    assert values == {expected}


def test_seq_mode_tuples_carry_second_color():
    seq = compute_levels([constant2(), constant2()], 1, 8)
    code = seq.levels[1].coloring.eval(seq.levels[1].base)
    t = decode_tuple(code, seq.levels[0].cert.P, seq=True)
    assert t.k == 0


def test_chain_n1_constant():
    seq = compute_levels(constant2(), 1, 8)
    chain = build_witness_chain(seq, 1)
    assert chain.j0 == 0
    assert len(chain.tuples) == 1
    t = chain.tuples[0]
    assert (t.p_prime, t.p_tilde, t.j) == ((), (1,), 0)


def test_chain_decoding_deterministic():
    seq = compute_levels(popcount2(), 2, 12)
    a = build_witness_chain(seq, 2)
    b = build_witness_chain(seq, 2)
    assert a.codes == b.codes and a.tuples == b.tuples and a.j0 == b.j0


def test_chain_n2_link_encoding():
    seq = compute_levels(constant2(), 2, 16)
    chain = build_witness_chain(seq, 2)
    assert len(chain.tuples) == 2
    # each tuple's j field is its predecessor's code
    assert chain.tuples[1].j == encode_tuple(chain.tuples[0], seq.levels[0].cert.P)
    assert chain.tuples[0].j == chain.j0
    # re-encoding reproduces the decoded codes
    assert chain.codes[0] == encode_tuple(chain.tuples[0], seq.levels[0].cert.P)
    assert chain.codes[1] == encode_tuple(chain.tuples[1], seq.levels[1].cert.P)


def test_chain_needs_depth():
    seq = compute_levels(constant2(), 1, 8)
    with pytest.raises(PreconditionViolated):
        build_witness_chain(seq, 2)


def test_assemble_constant_n2():
    seq = compute_levels(constant2(), 2, 16)
    chain = build_witness_chain(seq, 2)
    rep = assemble_solution(seq, chain)
    assert word_text(rep.word) == "0 0 0 x0 0"
    assert rep.color == 0 and rep.depth_checked == 1
    assert check_solution(constant2(), rep.word, 1).ok


def test_assemble_n1_degenerates_to_flip_pair():
    seq = compute_levels(constant2(), 1, 8)
    chain = build_witness_chain(seq, 1)
    rep = assemble_solution(seq, chain)
    assert rep.word.var_count == 0
    assert rep.color == 0


def test_assemble_homogeneity_exhaustive_popcount2():
    col = popcount2()
    seq = compute_levels(col, 3, 12)
    chain = build_witness_chain(seq, 3)
    rep = assemble_solution(seq, chain)
    # re-run the full flip/truncation grid independently
    from varword.words import flip
    points = [b[0] for b in rep.blocks[1:]] + [len(rep.base)]
    n = len(rep.blocks)
    for mask in range(1 << n):
        J = sorted({p for j in range(n) if mask >> j & 1 for p in rep.blocks[j]})
        for p in points:
            assert col.eval(flip(rep.base, J)[:p]) == rep.color


def test_saturation_prefixes_cover_explored_values():
    for col in (constant2(), popcount2(), popcount3()):
        seq = compute_levels(col, 2, 10, saturation=True)
        for lv in seq.levels[:2]:
            prefixes = lv.saturation
            assert prefixes is not None
            covered = {lv.coloring.eval(p) for p in prefixes}
            last = prefixes[-1]
            for tail in iter_bits(5):
                assert lv.coloring.eval(last + tail) in covered


def test_budget_exhausted_carries_partial_levels():
    tiny = TableColoring("strings", 2, 3, {}, 0)
    with pytest.raises(BudgetExhausted) as err:
        compute_levels(tiny, 2, 8)
    partial = err.value.partial
    assert partial.depth >= 1  # level 0 was built before the failure


def test_table_levels_depth_four_fit_horizon():
    for s in range(10):
        col = seeded_table(s)
        seq = compute_levels(col, 4, 12)
        assert len(seq.levels[4].base) <= col.horizon
