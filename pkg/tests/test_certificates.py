import random

import pytest
from hypothesis import given, strategies as st

from varword.certificates import (
    WitnessTuple,
    build_validity,
    decode_tuple,
    encode_tuple,
    extract_witness,
    find_flip_pair,
    greedy_gamma,
    verify_certificate,
)
from varword.colorings import RuleColoring, TableColoring
from varword.errors import BudgetExhausted, NoRepeat, PreconditionViolated
from varword.words import flip, iter_bits

from corpus import constant2, length_mod2, popcount2, popcount3, seeded_table, string_corpus


def test_flip_pair_constant():
    assert find_flip_pair(constant2(), "0000", (0, 1)) == ((), (0,))


def test_flip_pair_popcount2():
    # walk: l0=0, l1=1, l2=0 -> repeat at (0, 2)
    p_prime, p_tilde = find_flip_pair(popcount2(), "0000", (1, 3))
    assert (p_prime, p_tilde) == ((), (1, 3))


def test_flip_pair_popcount3():
    assert find_flip_pair(popcount3(), "00000", (0, 1, 2)) == ((), (0, 1, 2))


def test_flip_pair_preconditions():
    with pytest.raises(PreconditionViolated):
        find_flip_pair(popcount2(), "0100", (1, 3))  # nonzero on P
    with pytest.raises(PreconditionViolated):
        find_flip_pair(popcount2(), "0000", (1,))    # |P| < colors


def test_flip_pair_postcondition_on_corpus():
    rng = random.Random(0)
    for name, col in string_corpus():
        if col.colors > 3:
            continue
        for _ in range(20):
            n = rng.randrange(col.colors + 2, 10)
            rho = "".join(rng.choice("01") for _ in range(n))
            P = sorted(rng.sample(range(n), col.colors + 1))
            rho = flip(rho, [p for p in P if rho[p] == "1"])
            p_prime, p_tilde = find_flip_pair(col, rho, P)
            alpha = flip(rho, p_prime)
            assert col.eval(alpha) == col.eval(flip(alpha, p_tilde)), name


def test_greedy_constant_trace():
    g = greedy_gamma(constant2(), "", 8)
    assert g.L == (0,)
    assert g.gamma == {(0,): "0", (0, 0): "00"}
    assert g.rho_tilde == "000"
    assert g.reset_log == ((1, "0"),)


def test_greedy_single_color_guard():
    with pytest.raises(PreconditionViolated):
        greedy_gamma(RuleColoring("strings", 1, "constant"), "", 8)


def test_greedy_length_mod_no_resets():
    g = greedy_gamma(length_mod2(), "", 8)
    assert g.L == (0, 1)
    assert len(g.gamma) == 14
    assert g.reset_log == ()
    rep = verify_certificate(g, length_mod2(), len(g.rho_tilde) + 2)
    assert rep.ok and rep.item4_mode == "exhaustive"


def test_build_validity_constant():
    vc = build_validity(constant2(), "", 8)
    assert vc.rho_tilde == "000"
    assert vc.P == (1, 2)
    assert vc.rho_tilde[1] == vc.rho_tilde[2] == "0"


def test_p_bound_two_colors():
    # 14 = 2 + 4 + 8 is the largest chain; the bound is 16
    for name, col in string_corpus():
        if col.colors != 2:
            continue
        vc = build_validity(col, "", 12)
        assert len(vc.P) <= 14 < 16, name


def test_p_bound_three_colors():
    vc = build_validity(popcount3(), "", 12)
    assert len(vc.P) == 120 < 3 ** 5


def test_budget_exhausted_carries_partial():
    # all-zero table at horizon 2: no room left after the forced reset
    evil = TableColoring("strings", 2, 2, {}, 0)
    with pytest.raises(BudgetExhausted) as err:
        greedy_gamma(evil, "", 8)
    assert "gamma" in err.value.partial


def test_verify_catches_corruption():
    vc = build_validity(popcount2(), "", 8)
    g = vc.gamma
    broken = dict(g.gamma)
    key = g.index_order[2]
    broken[key] = flip(broken[key], (len(broken[key]) - 1,))
    from varword.certificates import GammaCertificate
    bad = GammaCertificate(
        universe=g.universe, L=g.L, index_order=g.index_order, gamma=broken,
        original=g.original, base=g.base, rho_tilde=g.rho_tilde,
        reset_log=g.reset_log, item4_horizon=g.item4_horizon, budget=g.budget)
    rep = verify_certificate(bad, popcount2(), len(g.rho_tilde) + 1)
    assert not rep.ok
    assert not rep.item_ok[3]


def test_verify_reports_item4_violation():
    # a table agreeing with the constant certificate except on one flip inside P
    vc = build_validity(constant2(), "", 8)
    tau = vc.rho_tilde + "0"
    evil = TableColoring("strings", 2, 6, {flip(tau, (vc.P[0],)): 1}, 0)
    rep = verify_certificate(vc, evil, 6)
    assert not rep.item_ok[4]
    assert any(v.item == 4 for v in rep.violations)
    # items 1-3 are untouched by that entry
    assert rep.item_ok[2] and rep.item_ok[3]


def test_extract_witness_constant():
    vc = build_validity(constant2(), "", 8)
    t = extract_witness(vc, constant2(), "000")
    assert (t.p_prime, t.p_tilde, t.j) == ((), (1,), 0)


def test_extract_witness_immediate_repeat_under_constant():
    vc = build_validity(constant2(), "", 8)
    for tail in iter_bits(3):
        t = extract_witness(vc, constant2(), "000" + tail)
        assert t.p_prime == () and t.p_tilde == (vc.P[0],)


def test_extract_witness_triple_equality_sampled():
    rng = random.Random(1)
    col = popcount2()
    vc = build_validity(col, "", 8)
    for _ in range(50):
        tail = "".join(rng.choice("01") for _ in range(rng.randrange(6)))
        sigma = vc.rho_tilde + tail
        t = extract_witness(vc, col, sigma)
        alpha = flip(sigma, t.p_prime)
        assert col.eval(alpha) == col.eval(flip(alpha, t.p_tilde)) == col.eval(alpha[: t.p_tilde[0]]) == t.j


def test_extract_witness_norepeat_signals_item4_breach():
    vc = build_validity(constant2(), "", 8)  # L = {0}
    evil = TableColoring("strings", 2, 6, {"0000": 1}, 0)
    with pytest.raises(NoRepeat):
        extract_witness(vc, evil, "0000")


masks = st.integers(min_value=0, max_value=(1 << 14) - 1)


@given(masks, masks, st.integers(min_value=0, max_value=10 ** 6))
def test_encode_decode_round_trip(m1, m2, j):
    P = tuple(range(0, 28, 2))
    t = WitnessTuple(tuple(p for i, p in enumerate(P) if m1 >> i & 1),
                     tuple(p for i, p in enumerate(P) if m2 >> i & 1), j)
    assert decode_tuple(encode_tuple(t, P), P) == t


@given(masks, masks, st.integers(min_value=0, max_value=1000), st.integers(min_value=0, max_value=5))
def test_encode_decode_seq_round_trip(m1, m2, j, k):
    P = tuple(range(14))
    t = WitnessTuple(tuple(p for i, p in enumerate(P) if m1 >> i & 1),
                     tuple(p for i, p in enumerate(P) if m2 >> i & 1), j, k)
    assert decode_tuple(encode_tuple(t, P), P, seq=True) == t


def test_item4_horizon_accounting():
    vc = build_validity(constant2(), "", 8)
    # one reset from base '' anchored at tau(0,)='0': scanned to length 1+8
    assert vc.gamma.item4_horizon == 9
    vc = build_validity(seeded_table(0), "", 12)
    assert vc.gamma.item4_horizon == 12
