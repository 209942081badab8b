import random

import pytest

from zechbruijn import (
    CycleCtx,
    conjugate_of,
    cycle_position,
    cyclotomic_numbers,
    exponent_to_state,
    pair_at,
    pairs_from_coset,
    poly_from_set_notation,
    zech_bruteforce,
    zech_closure,
    zech_seed_trinomial,
)
from zechbruijn.cycles import ZERO_CYCLE
from zechbruijn.gf2poly import poly_mod, poly_mul, state_from_bits

from conftest import P4, P10


def test_conjugate_of_order4(ctx4):
    pos = conjugate_of(ctx4, cycle_position(ctx4, 3))
    assert (pos.cycle, pos.offset) == (2, 4)
    assert pos.state == state_from_bits((1, 0, 0, 1))
    pos = conjugate_of(ctx4, 6)
    assert (pos.cycle, pos.offset) == (1, 4)
    assert pos.state == state_from_bits((1, 0, 1, 1))
    # the pair's members differ exactly in the first coordinate
    assert exponent_to_state(ctx4, 6) ^ pos.state == 1


def test_conjugate_zero_special(ctx4):
    from zechbruijn.cycles import CyclePos

    zero = CyclePos(ZERO_CYCLE, 0, 0)
    back = conjugate_of(ctx4, zero)
    assert (back.cycle, back.offset, back.state) == (0, 0, 1)
    assert conjugate_of(ctx4, 0).cycle is ZERO_CYCLE


def test_conjugate_order300_seed_table_only():
    # tau(7) = 300 from the trinomial identity is enough to place the pair
    p300 = poly_from_set_notation("n=300;{7}")
    table = zech_closure(zech_seed_trinomial(p300))
    ctx = CycleCtx(p300, 31, zech=table)
    pos = conjugate_of(ctx, 7)
    assert (pos.cycle, pos.offset) == (21, 9)


def test_conjugacy_involution(ctx10):
    rng = random.Random(9)
    for _ in range(50):
        k = rng.randrange(1, 1023)
        pos = cycle_position(ctx10, k)
        back = conjugate_of(ctx10, conjugate_of(ctx10, pos))
        assert back == pos


def test_pair_states_differ_in_first_coordinate(ctx10):
    rng = random.Random(10)
    for _ in range(50):
        pair = pair_at(ctx10, rng.randrange(1, 1023))
        assert pair.left.state ^ pair.right.state == 1


def test_pairs_from_coset_order300():
    p300 = poly_from_set_notation("n=300;{7}")
    table = zech_closure(zech_seed_trinomial(p300))
    ctx = CycleCtx(p300, 31, zech=table)
    batch = pairs_from_coset(ctx, 7)
    assert batch.nj == 300
    assert batch.cycle_pair_count == 5 and batch.pairs_per_cycle == 60
    assert batch.cycle_pairs() == [(7, 21), (14, 11), (28, 22), (25, 13), (19, 26)]
    first = next(iter(batch))
    assert (first.left.cycle, first.left.offset) == (7, 0)
    assert (first.right.cycle, first.right.offset) == (21, 9)


def test_pairs_from_coset_zero_side(ctx10):
    # an exponent with tau(k) = 0 mod t joins cycles to u_0
    batch = pairs_from_coset(ctx10, 85)
    assert ctx10.zech.resolve(85) % 31 == 0
    assert all(b == 0 for _a, b in batch.cycle_pairs())
    lefts = {a for a, _b in batch.cycle_pairs()}
    assert lefts == {85 % 31 * pow(2, s, 31) % 31 for s in range(5)}


def test_pairs_from_coset_same_cycle_signal(ctx10):
    assert ctx10.zech.resolve(341) % 31 == 341 % 31
    assert pairs_from_coset(ctx10, 341) is None


def test_batch_pair_count_matches_iteration(ctx10):
    batch = pairs_from_coset(ctx10, 3)
    pairs = list(batch)
    assert len(pairs) == batch.nj
    per = {}
    for pr in pairs:
        key = (pr.left.cycle, pr.right.cycle)
        per[key] = per.get(key, 0) + 1
    assert len(per) == batch.cycle_pair_count
    assert set(per.values()) == {batch.pairs_per_cycle}


def test_pair_dump_format(ctx4):
    from zechbruijn import pair_dump_line

    assert pair_dump_line(pair_at(ctx4, 3)) == "3 14 0 1 2 4"


def _field_log_table(p):
    """Independent discrete log of GF(2^n) by walking powers of x mod p."""
    n = p.bit_length() - 1
    logs = {}
    x = 1
    for e in range((1 << n) - 1):
        logs[x] = e
        x = poly_mod(poly_mul(x, 2), p)
    return logs


def test_cyclotomic_numbers_order4_against_field_oracle(ctx4):
    got = cyclotomic_numbers(ctx4)
    logs = _field_log_table(P4)
    expect = [[0] * 3 for _ in range(3)]
    for xi, k in logs.items():
        if xi == 1:
            continue  # xi + 1 = 0 sits in no class
        expect[k % 3][logs[xi ^ 1] % 3] += 1
    assert got == expect


def test_cyclotomic_row_sums(ctx4, ctx10):
    for ctx in (ctx4, ctx10):
        mat = cyclotomic_numbers(ctx)
        e = ctx.e
        assert sum(mat[0]) == e - 1      # 1 lies in C_0, excluded
        for i in range(1, ctx.t):
            assert sum(mat[i]) == e
        assert sum(map(sum, mat)) == ctx.modulus - 1


def test_cyclotomic_total_identity(ctx10):
    # one count per k in [1, 2^n - 2]
    assert sum(map(sum, cyclotomic_numbers(ctx10))) == 2**10 - 2


def test_cyclotomic_zero_row_pattern(ctx10):
    mat = cyclotomic_numbers(ctx10)
    nonzero = {i for i in range(1, 31) if mat[0][i] > 0}
    assert nonzero == {3, 6, 7, 12, 14, 15, 17, 19, 23, 24, 25, 27, 28, 29, 30}


def test_cyclotomic_symmetry(ctx10):
    mat = cyclotomic_numbers(ctx10)
    for i in range(31):
        for j in range(31):
            assert mat[i][j] == mat[j][i]


def test_cyclotomic_requires_complete_table():
    p300 = poly_from_set_notation("n=300;{7}")
    ctx = CycleCtx(p300, 31, zech=zech_closure(zech_seed_trinomial(p300)))
    with pytest.raises(ValueError):
        cyclotomic_numbers(ctx)


@pytest.mark.parametrize("p,t", [(P4, 3), (P10, 11)])
def test_edge_counts_equal_cyclotomic_numbers(p, t):
    table = zech_bruteforce(p)
    ctx = CycleCtx(p, t, zech=table)
    mat = cyclotomic_numbers(ctx)
    M = ctx.modulus
    counts = [[0] * t for _ in range(t)]
    for k in range(1, M):
        tk = table.resolve(k)
        if k < tk:      # each unordered pair once
            counts[k % t][tk % t] += 1
            if k % t != tk % t:
                counts[tk % t][k % t] += 1
    for i in range(t):
        for j in range(t):
            if i != j:
                assert counts[i][j] == mat[i][j]
