import pytest

from zechbruijn import (
    Anf,
    NlfsrFeedback,
    anf_bits,
    apply_crossjoin,
    crossjoin_bfs,
    enumerate_crossjoin_pairs,
    feedback_of_debruijn,
    fryers_coefficient,
    fryers_coefficients,
    fryers_total,
    insert_zero,
    is_debruijn,
    lfsr_bits,
    poly_from_set_notation,
    random_crossjoin,
    zech_closure,
    zech_seed_trinomial,
)
from zechbruijn.crossjoin import count_crossjoin_pairs_naive

from conftest import P4, P5

S5 = [int(c) for c in "00000110110001001011111001110101"]
T5 = [int(c) for c in "00000110110011111000100101110101"]
R5 = [int(c) for c in "00000110111010100101100111110001"]

H_S = ("x0 + x1*x2*x3*x4 + x1*x2*x4 + x1*x3*x4 + x1*x3 + x1 "
       "+ x2*x3*x4 + x2*x3 + x3 + 1")
H_T = ("x0 + x1*x2*x3*x4 + x1*x2*x3 + x1*x2 + x1*x3*x4 + x1*x3 + x1 "
       "+ x2*x3 + x3 + 1")
H_R = ("x0 + x1*x2*x3*x4 + x1*x2*x4 + x1*x3 + x1 + x2*x3*x4 "
       "+ x2*x4 + x2 + x3 + 1")


def test_order5_walkthrough_chain():
    hS = feedback_of_debruijn(S5, 5)
    assert hS == Anf.parse(H_S, 5)
    hT = apply_crossjoin(hS, (0b0011, 0b1110))   # tails A=1100, B=0111
    assert hT == Anf.parse(H_T, 5)
    assert anf_bits(hT, 0, 32) == T5
    hR = apply_crossjoin(hT, (0b1101, 0b0010))   # tails A=1011, B=0100
    assert hR == Anf.parse(H_R, 5)
    assert anf_bits(hR, 0, 32) == R5
    for h in (hS, hT, hR):
        assert is_debruijn(anf_bits(h, 0, 32), 5)


def test_apply_crossjoin_involution_and_domain():
    hS = feedback_of_debruijn(S5, 5)
    pair = (0b0011, 0b1110)
    assert apply_crossjoin(apply_crossjoin(hS, pair), pair) == hS
    with pytest.raises(ValueError):
        apply_crossjoin(hS, (0b0011, 0b0011))


def test_forced_pair_order5(zech5):
    # the published walkthrough prints these states and logarithms; they
    # belong to exponents (7, 21) (the printed (3, 17) resolves to
    # tau = (29, 30) instead -- see the decisions log)
    pair, fb, prov = random_crossjoin(P5, zech=zech5, ab=(7, 21))
    assert (prov["tau_a"], prov["tau_b"]) == (22, 25)
    assert pair.alpha == 0b11010        # (0,1,0,1,1)
    assert pair.beta == 0b10110         # (0,1,1,0,1)
    anf = fb.to_anf()
    assert anf == Anf.parse("x0 + x1*x2*x4 + x1*x3*x4 + x2", 5)
    bits = fb.bits(1, 31)
    assert bits == [int(c) for c in "1000010010111011001111100011010"]
    assert is_debruijn(insert_zero(bits), 5)


def test_forced_pair_3_17_true_values(zech5):
    pair, fb, prov = random_crossjoin(P5, zech=zech5, ab=(3, 17))
    assert (prov["tau_a"], prov["tau_b"]) == (29, 30)
    assert pair.alpha == 0b00100        # (0,0,1,0,0)
    assert pair.beta == 0b00011         # (1,1,0,0,0)
    assert is_debruijn(insert_zero(fb.bits(1, 31)), 5)


def test_forced_pair_rejects_bad_order(zech5):
    with pytest.raises(ValueError):
        random_crossjoin(P5, zech=zech5, ab=(17, 3))


def test_random_sampling_deterministic(zech5):
    a = random_crossjoin(P5, zech=zech5, seed=123)
    b = random_crossjoin(P5, zech=zech5, seed=123)
    assert a[2] == b[2]
    pair, fb, prov = a
    assert prov["a"] < prov["b"] < prov["tau_a"] < prov["tau_b"]
    assert is_debruijn(insert_zero(fb.bits(1, 31)), 5)


def test_trinomial_order31_feedback():
    p31 = poly_from_set_notation("n=31;{3}")
    table = zech_closure(zech_seed_trinomial(p31))
    pair, fb, prov = random_crossjoin(p31, zech=table, ab=(3, 6))
    assert (prov["tau_a"], prov["tau_b"]) == (31, 62)
    assert pair.alpha == 1 << 28 and pair.beta == 1 << 25
    assert fb.degree == 29
    assert len(fb.tails) == 2
    with pytest.raises(ValueError):
        fb.to_anf()     # ~2^29 monomials


def test_order127_family():
    p127 = poly_from_set_notation("n=127;{1}")
    table = zech_closure(zech_seed_trinomial(p127))
    M = (1 << 127) - 1
    orderings = []
    for i in range(16):
        a, b = pow(2, 8 * i, M), pow(2, 1 + 8 * i, M)
        ta, tb = table.resolve(a), table.resolve(b)
        assert ta == 127 * a % M and tb == 127 * b % M
        orderings.append(a < b < ta < tb)
    # the final family member wraps: 127 * 2^121 mod M falls below tau(a)
    assert orderings == [True] * 15 + [False]
    pair, fb, prov = random_crossjoin(p127, zech=table,
                                      ab=(pow(2, 8, M), pow(2, 9, M)))
    assert fb.degree == 125
    # applying several disjoint pairs keeps the degree
    tails = set(fb.tails)
    for i in (2, 3, 4):
        pr, f2, _ = random_crossjoin(p127, zech=table,
                                     ab=(pow(2, 8 * i, M), pow(2, 1 + 8 * i, M)))
        tails ^= f2.tails
    stacked = NlfsrFeedback(p127, frozenset(tails))
    assert stacked.degree == 125


def test_enumerate_counts():
    db4 = insert_zero(lfsr_bits(P4, 1, 15))
    assert len(enumerate_crossjoin_pairs(db4)) == 7
    db5 = insert_zero(lfsr_bits(P5, 1, 31))
    assert len(enumerate_crossjoin_pairs(db5)) == 35
    db3 = [0, 0, 0, 1, 0, 1, 1, 1]
    assert len(enumerate_crossjoin_pairs(db3)) == \
        count_crossjoin_pairs_naive(db3, 3)
    with pytest.raises(ValueError):
        enumerate_crossjoin_pairs([0, 1] * 8)


def test_enumerated_pairs_regenerate_debruijn():
    db4 = insert_zero(lfsr_bits(P4, 1, 15))
    h = feedback_of_debruijn(db4, 4)
    for pair in enumerate_crossjoin_pairs(db4):
        g = apply_crossjoin(h, pair)
        assert is_debruijn(anf_bits(g, 0, 16), 4)
        # truth tables differ in exactly 4 rows (two per product term)
        dist = sum(a != b for a, b in zip(h.truth_table(), g.truth_table()))
        assert dist == 4


def test_exponent_order_implies_interleaving():
    # sorted exponents a < b < tau(a) < tau(b) always produce a couple the
    # positional scan also finds, exhaustively up to order 10
    from zechbruijn import zech_bruteforce
    from zechbruijn.gf2poly import lfsr_step, lfsr_taps

    polys = (P4, P5, (1 << 6) | (1 << 1) | 1,
             (1 << 8) | (1 << 6) | (1 << 5) | (1 << 1) | 1,
             (1 << 10) | (1 << 3) | 1)
    for p in polys:
        n = p.bit_length() - 1
        table = zech_bruteforce(p)
        M = (1 << n) - 1
        mbits = lfsr_bits(p, 1, M)
        db = insert_zero(mbits)
        found = {frozenset((pr.tail_a, pr.tail_b))
                 for pr in enumerate_crossjoin_pairs(db)}
        taps = lfsr_taps(p)
        states = []
        v = 1
        for _ in range(M):
            states.append(v)
            v = lfsr_step(v, taps, n)
        tau = [0] + [table.resolve(k) for k in range(1, M)]
        checked = 0
        for a in range(1, M - 2):
            ta = tau[a]
            if ta <= a:
                continue
            for b in range(a + 1, ta):
                if ta < tau[b]:
                    key = frozenset((states[a] >> 1, states[b] >> 1))
                    assert key in found
                    checked += 1
        assert checked > 0


def test_fryers_small_orders():
    assert [fryers_coefficient(4, k) for k in (1, 3, 5, 7)] == [1, 7, 7, 1]
    assert fryers_coefficient(5, 5) == 273
    assert fryers_coefficient(4, 2) == 0
    assert fryers_total(4) == 16
    assert fryers_total(5) == 2048
    assert fryers_total(6) == 1 << 26
    assert [c for _k, c in fryers_coefficients(5)] == \
        [1, 35, 273, 715, 715, 273, 35, 1]


def test_fryers_helleseth_klove_formula():
    for n in range(2, 21):
        half = 1 << (n - 1)
        assert fryers_coefficient(n, 3) == (half - 1) * (half - 2) // 6


def test_fryers_symmetry_and_totals():
    for n in range(2, 14):
        row = [c for _k, c in fryers_coefficients(n)]
        assert row == row[::-1]
        assert sum(row) == fryers_total(n, verify=False)
        assert row[0] == 1


def test_fryers_iterator_matches_direct():
    for n in (4, 7, 10):
        for k, c in fryers_coefficients(n):
            assert c == fryers_coefficient(n, k)


def test_bfs_order4_finds_all_sixteen():
    db4 = insert_zero(lfsr_bits(P4, 1, 15))
    anfs, truncated = crossjoin_bfs(db4, depth=3)
    assert not truncated and len(anfs) == 16
    anfs0, _ = crossjoin_bfs(db4, depth=0)
    assert len(anfs0) == 1
    anfs1, _ = crossjoin_bfs(db4, depth=1)
    assert len(anfs1) == 8      # start + its 7 neighbours


def test_bfs_order5_first_layer():
    db5 = insert_zero(lfsr_bits(P5, 1, 31))
    anfs, truncated = crossjoin_bfs(db5, depth=1)
    assert not truncated and len(anfs) == 36   # start + N(l;3) = 35


def test_bfs_budget_truncation():
    db4 = insert_zero(lfsr_bits(P4, 1, 15))
    anfs, truncated = crossjoin_bfs(db4, depth=3, budget=2)
    assert truncated and len(anfs) < 16
