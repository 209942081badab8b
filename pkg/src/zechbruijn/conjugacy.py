"""Conjugate pairs between cycles, located exactly by Zech logarithms.

The conjugate of the state phi(alpha^k) is phi(alpha^tau(k)), so a single
table lookup pins both members of a pair together with their cycles and
offsets. Whole cosets of pairs follow from one entry by doubling, and
counting pairs between two cycles is the cyclotomic number computation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cycles import ZERO_CYCLE, CyclePos, cycle_position
from .zech import ResourceCapError, coset_leader


@dataclass(frozen=True)
class ConjugatePair:
    """States phi(alpha^k) and phi(alpha^tau(k)), with their positions."""
    k: int
    tau_k: int
    left: CyclePos
    right: CyclePos


def conjugate_of(ctx, pos):
    """Position of the conjugate of a state given as CyclePos or exponent.

    The zero state and phi(alpha^0) = (1, 0, ..., 0) are conjugate; every
    other state at exponent k has its conjugate at exponent tau(k).
    """
    if isinstance(pos, CyclePos):
        if pos.cycle is ZERO_CYCLE:
            return cycle_position(ctx, 0)
        k = pos.cycle + ctx.t * pos.offset
    else:
        k = pos % ctx.modulus
    if k == 0:
        return CyclePos(ZERO_CYCLE, 0, 0)
    if ctx.zech is None:
        raise ValueError("context has no Zech table")
    return cycle_position(ctx, ctx.zech.resolve(k))


def pair_at(ctx, k):
    """The conjugate pair anchored at exponent k."""
    tk = ctx.zech.resolve(k)
    return ConjugatePair(k, tk, cycle_position(ctx, k), cycle_position(ctx, tk))


def _orbit_period(x, t):
    """Least s > 0 with x * 2^s = x mod t (1 when x = 0 mod t)."""
    x %= t
    s = 1
    y = (x * 2) % t
    while y != x:
        y = (y * 2) % t
        s += 1
    return s


class CosetPairBatch:
    """All conjugate pairs induced by one Zech entry, grouped by cycle pair.

    From tau(j), the doubled exponent pairs (2^s j, 2^s tau(j)) run through
    n_j conjugate pairs that fall on `cycle_pair_count` distinct pairs of
    cycles, `pairs_per_cycle` on each.
    """

    def __init__(self, ctx, j):
        tau_j = ctx.zech.resolve(j)
        if j % ctx.t == tau_j % ctx.t:
            raise ValueError("coset joins a cycle to itself; no edge")
        self.ctx = ctx
        self.j = j
        self.tau_j = tau_j
        _, self.nj = coset_leader(j, ctx.n)
        # the cycle-pair sequence repeats when both residues do
        self.cycle_pair_count = math.lcm(
            _orbit_period(j, ctx.t), _orbit_period(tau_j, ctx.t)
        )
        self.pairs_per_cycle = self.nj // self.cycle_pair_count

    def cycle_pairs(self):
        """The distinct (left cycle, right cycle) index pairs."""
        M, t = self.ctx.modulus, self.ctx.t
        out = []
        a, b = self.j, self.tau_j
        for _ in range(self.cycle_pair_count):
            out.append((a % t, b % t))
            a = (a * 2) % M
            b = (b * 2) % M
        return out

    def __iter__(self):
        """Lazily yield all n_j pairs; n_j can be as large as the degree
        times the coset count, so nothing is materialized up front."""
        M = self.ctx.modulus
        a, b = self.j, self.tau_j
        for _ in range(self.nj):
            yield ConjugatePair(
                a, b, cycle_position(self.ctx, a), cycle_position(self.ctx, b)
            )
            a = (a * 2) % M
            b = (b * 2) % M


def pairs_from_coset(ctx, j):
    """Batch of conjugate pairs for coset D_j, or None when j and tau(j)
    land on the same cycle (no edge)."""
    tau_j = ctx.zech.resolve(j)
    if j % ctx.t == tau_j % ctx.t:
        return None
    return CosetPairBatch(ctx, j)


def cyclotomic_numbers(ctx):
    """The t x t matrix (i, j)_t counting xi in C_i with xi + 1 in C_j.

    Equivalently: exponents k = i mod t with tau(k) = j mod t. Requires a
    complete table; xi = 1 (k = 0) is excluded since 1 + 1 = 0 lies in no
    class.
    """
    zech = ctx.zech
    if zech is None or not zech.complete:
        raise ValueError("cyclotomic numbers need a complete Zech table")
    t, M = ctx.t, ctx.modulus
    counts = [[0] * t for _ in range(t)]
    try:
        arr = zech.to_array()
    except ResourceCapError:
        arr = None
    if arr is not None:
        k = np.arange(1, M, dtype=np.int64)
        flat = np.bincount((k % t) * t + (arr[1:] % t), minlength=t * t)
        for i in range(t):
            for j in range(t):
                counts[i][j] = int(flat[i * t + j])
        return counts
    for k in range(1, M):
        counts[k % t][zech.resolve(k) % t] += 1
    return counts


def zero_cycle_pair(ctx):
    """The unique pair joining the zero cycle to u_0: (0, phi(alpha^0))."""
    return ConjugatePair(
        0, 0, CyclePos(ZERO_CYCLE, 0, 0), cycle_position(ctx, 0)
    )


def pair_dump_line(pair):
    """Dump format: "k tau(k) i j l m" (exponents, then both positions)."""
    return (f"{pair.k} {pair.tau_k} {pair.left.cycle} {pair.left.offset} "
            f"{pair.right.cycle} {pair.right.offset}")
