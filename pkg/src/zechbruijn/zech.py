"""Zech logarithm tables relative to a primitive polynomial.

The table of tau, defined by 1 + alpha^k = alpha^tau(k) on [1, 2^n - 2],
is stored one entry per cyclotomic coset leader; the Double identity
tau(2k) = 2 tau(k) recovers everything else. Tables are built either by
brute force over the m-sequence (small n) or by propagating a seed entry
through the Flip / Inv / Double identities plus the difference-chaining
rule, with an optional subfield lift when chaining stalls.
"""

from functools import lru_cache

import numpy as np

from .factors import UnsupportedDegreeError
from .gf2poly import (
    associated_irreducible,
    degree,
    is_primitive,
    lfsr_step,
    lfsr_taps,
    poly_exponents,
    poly_to_set_notation,
)

BRUTEFORCE_CAP = 26        # 2^n state index above this refuses (memory)
FLAT_ARRAY_CAP = 24        # flat numpy workspace bound for closure sweeps
CHAIN_BUDGET = 1_000_000   # default candidate checks for the pair-scan sweep

PROVENANCES = ("seed", "flip", "inv", "double", "chain", "subfield", "bruteforce")


class MissingEntryError(KeyError):
    """tau requested at an element whose coset is not in the table."""


class CorruptTableError(ValueError):
    """Two derivations of the same entry disagree."""


class ResourceCapError(ValueError):
    """Requested computation exceeds the configured size cap."""


def coset_leader(k, n):
    """Leader (minimum) and size of the doubling orbit of k mod 2^n - 1."""
    M = (1 << n) - 1
    k %= M
    lead = k
    x = (k << 1) % M
    size = 1
    while x != k:
        if x < lead:
            lead = x
        x = (x << 1) % M
        size += 1
    return lead, size


def coset_elements(k, n):
    """The doubling orbit of k mod 2^n - 1, starting from k."""
    M = (1 << n) - 1
    k %= M
    out = [k]
    x = (k << 1) % M
    while x != k:
        out.append(x)
        x = (x << 1) % M
    return out


@lru_cache(maxsize=None)
def num_cosets(n):
    """Number of cyclotomic cosets of 2 on [1, 2^n - 2]."""
    # cosets on [0, 2^n-2] correspond to the irreducible divisors of
    # x^(2^n - 1) - 1, i.e. all binary irreducibles of degree d | n save x;
    # drop D_0 as well.
    def mobius(m):
        out, d = 1, 2
        while d * d <= m:
            if m % d == 0:
                m //= d
                if m % d == 0:
                    return 0
                out = -out
            d += 1
        return -out if m > 1 else out

    total = 0
    for d in range(1, n + 1):
        if n % d:
            continue
        cnt = sum(mobius(e) * (1 << (d // e)) for e in range(1, d + 1) if d % e == 0)
        total += cnt // d
    return total - 2


class ZechTable:
    """Partial or complete map k -> tau(k), stored per coset leader."""

    def __init__(self, n, p=None):
        self.n = n
        self.modulus = (1 << n) - 1
        self.p = p
        self.entries = {}  # leader -> (tau(leader), provenance)

    # -- storage ------------------------------------------------------------

    def add_entry(self, k, v, provenance):
        """Record tau(k) = v; normalizes to the coset leader via Double.

        Returns True when the coset was new, False when it was already
        present with the same value; disagreement raises CorruptTableError.
        """
        M = self.modulus
        k %= M
        v %= M
        if k == 0 or v == 0:
            raise ValueError("tau is defined on [1, 2^n - 2] only")
        lead = k
        shift = 0
        x = (k << 1) % M
        s = 1
        while x != k:
            if x < lead:
                lead, shift = x, s
            x = (x << 1) % M
            s += 1
        # k = lead * 2^(s - shift) ... i.e. lead reached after `shift` doublings
        # of k; so tau(lead) = tau(k) * 2^shift.
        vlead = (v * pow(2, shift, M)) % M
        old = self.entries.get(lead)
        if old is not None:
            if old[0] != vlead:
                raise CorruptTableError(
                    f"tau({lead}) derived as {vlead} but stored as {old[0]}"
                )
            return False
        self.entries[lead] = (vlead, provenance)
        return True

    def has(self, k):
        k %= self.modulus
        if k == 0:
            return False
        lead, _ = coset_leader(k, self.n)
        return lead in self.entries

    def resolve(self, k):
        """tau(k), shifting the stored leader entry by the Double map."""
        M = self.modulus
        k %= M
        if k == 0:
            raise ValueError("tau(0) is undefined (1 + 1 = 0)")
        lead = k
        shift = 0
        x = (k << 1) % M
        s = 1
        while x != k:
            if x < lead:
                lead, shift = x, s
            x = (x << 1) % M
            s += 1
        entry = self.entries.get(lead)
        if entry is None:
            raise MissingEntryError(f"coset of {k} (leader {lead}) not in table")
        size = s
        # k = lead doubled (size - shift) times
        return (entry[0] * pow(2, (size - shift) % size, M)) % M

    # -- bookkeeping ---------------------------------------------------------

    @property
    def complete(self):
        return len(self.entries) == num_cosets(self.n)

    def known_elements(self):
        """Sorted list of all elements in known cosets."""
        out = []
        for lead in self.entries:
            out.extend(coset_elements(lead, self.n))
        out.sort()
        return out

    def coverage(self):
        elements = sum(coset_leader(l, self.n)[1] for l in self.entries)
        return {
            "cosets_known": len(self.entries),
            "cosets_total": num_cosets(self.n),
            "elements_known": elements,
            "elements_total": self.modulus - 1,
            "complete": self.complete,
        }

    def to_array(self):
        """Full tau as a numpy int64 array indexed by k (-1 where unknown)."""
        if self.n > FLAT_ARRAY_CAP:
            raise ResourceCapError(f"flat array refused for n = {self.n} > {FLAT_ARRAY_CAP}")
        M = self.modulus
        arr = np.full(M, -1, dtype=np.int64)
        if not self.entries:
            return arr
        idx = np.fromiter(self.entries.keys(), dtype=np.int64)
        val = np.fromiter((v for v, _ in self.entries.values()), dtype=np.int64)
        arr[idx] = val
        for _ in range(self.n - 1):
            idx = (idx << 1) % M
            val = (val << 1) % M
            arr[idx] = val
        return arr

    def check(self):
        """Verify Flip/Double/Inv consistency of every stored entry."""
        M = self.modulus
        for lead, (v, _) in self.entries.items():
            if self.has(v) and self.resolve(v) != lead:
                raise CorruptTableError(f"flip fails at {lead}")
            inv_arg = M - lead
            if self.has(inv_arg) and self.resolve(inv_arg) != (v - lead) % M:
                raise CorruptTableError(f"inv fails at {lead}")

    # -- serialization ---------------------------------------------------------

    def dump(self, fp):
        poly = f"0x{self.p:x}" if self.p is not None else "-"
        fp.write(f"zech v1 n={self.n} p={poly} complete={1 if self.complete else 0}\n")
        for lead in sorted(self.entries):
            v, prov = self.entries[lead]
            fp.write(f"{lead} {v} {prov}\n")

    @classmethod
    def load(cls, fp):
        header = fp.readline().split()
        if header[:2] != ["zech", "v1"]:
            raise ValueError("not a zech v1 table file")
        fields = dict(tok.split("=", 1) for tok in header[2:])
        n = int(fields["n"])
        p = None if fields.get("p", "-") == "-" else int(fields["p"], 16)
        table = cls(n, p=p)
        for line in fp:
            if not line.strip():
                continue
            lead, v, prov = line.split()
            table.add_entry(int(lead), int(v), prov)
        return table


# ---------------------------------------------------------------------------
# construction

def zech_bruteforce(p, cap=BRUTEFORCE_CAP):
    """Complete table by hashing every m-sequence state to its position.

    tau(i) is the position of state_i + state_0; state_0 = (1, 0, ..., 0).
    """
    n = degree(p)
    if n > cap:
        raise ResourceCapError(f"brute force refused for n = {n} > cap {cap}")
    M = (1 << n) - 1
    table = ZechTable(n, p=p)
    if M == 1:
        return table
    taps = lfsr_taps(p)
    pos = np.zeros(1 << n, dtype=np.int64)
    v = 1
    for i in range(M):
        if v == 1 and i:
            raise ValueError("polynomial is not primitive")
        pos[v] = i
        v = lfsr_step(v, taps, n)
    if v != 1:
        raise ValueError("polynomial is not primitive")
    # leaders via vectorized doubling
    arr = np.arange(M, dtype=np.int64)
    lead = arr.copy()
    cur = arr.copy()
    for _ in range(n - 1):
        cur = (cur << 1) % M
        np.minimum(lead, cur, out=lead)
    is_leader = lead == arr
    v = 1
    for i in range(M):
        if i and is_leader[i]:
            table.entries[i] = (int(pos[v ^ 1]), "bruteforce")
        v = lfsr_step(v, taps, n)
    return table


def zech_seed_trinomial(p):
    """Seed table from the trinomial identity 1 + alpha^k = alpha^n."""
    n = degree(p)
    exps = poly_exponents(p)
    if len(exps) != 3 or exps[-1] != 0:
        raise ValueError(
            f"{poly_to_set_notation(p)} is not a trinomial; supply seeds explicitly"
        )
    k = exps[1]
    table = ZechTable(n, p=p)
    table.add_entry(k, n, "seed")
    return table


def zech_closure(table):
    """Close the table under Flip, Inv (and implicitly Double) in place."""
    M = table.modulus
    queue = [(lead, v) for lead, (v, _) in table.entries.items()]
    while queue:
        k, v = queue.pop()
        for arg, val, rule in ((v, k, "flip"), (M - k, (v - k) % M, "inv")):
            if arg % M == 0 or val % M == 0:
                continue
            if table.add_entry(arg, val, rule):
                queue.append((arg % M, val % M))
    return table


def zech_chain(table, i, j):
    """One application of the difference-chaining rule.

    With tau(i), tau(j), tau(i - j) known, tau at tau(i) - tau(j) equals
    tau(i - j) + j - tau(j). Returns the new (argument, value) pair and
    re-closes the table, or None when the inputs do not resolve or the
    argument's coset is already known.
    """
    M = table.modulus
    i %= M
    j %= M
    if i == j or i == 0 or j == 0:
        return None
    d = (i - j) % M
    if not (table.has(i) and table.has(j) and table.has(d)):
        return None
    ti, tj = table.resolve(i), table.resolve(j)
    arg = (ti - tj) % M
    if arg == 0 or table.has(arg):
        return None
    val = (table.resolve(d) + j - tj) % M
    table.add_entry(arg, val, "chain")
    zech_closure(table)
    return arg, val


_SWEEP_PREFIX = 4096   # small candidates carry nearly every derivation


def _sweep_flat(table):
    """Chaining sweep to fixpoint on flat numpy arrays (n <= FLAT_ARRAY_CAP).

    Each pass probes every unknown coset leader against the known elements
    (smallest first). Passes normally scan only a prefix of the knowns;
    once a prefix pass stops producing, one full-width pass either makes
    progress or certifies the fixpoint.
    """
    n, M = table.n, table.modulus
    tau = table.to_array()
    known = tau >= 0

    def add_closed(k, v, prov):
        stack = [(k, v, prov)]
        while stack:
            k, v, prov = stack.pop()
            k %= M
            v %= M
            if k == 0 or v == 0:
                continue
            if known[k]:
                if tau[k] != v:
                    raise CorruptTableError(f"tau({k}) = {tau[k]} vs {v}")
                continue
            table.add_entry(k, v, prov)
            kk, vv = k, v
            while True:
                known[kk] = True
                tau[kk] = vv
                kk = (kk << 1) % M
                vv = (vv << 1) % M
                if kk == k:
                    break
            stack.append((v, k, "flip"))
            stack.append((M - k, (v - k) % M, "inv"))

    arr = np.arange(M, dtype=np.int64)
    lead = arr.copy()
    cur = arr.copy()
    for _ in range(n - 1):
        cur = (cur << 1) % M
        np.minimum(lead, cur, out=lead)
    leaders_all = np.unique(lead[1:])

    full_scan = False
    while True:
        unknown_leaders = leaders_all[~known[leaders_all]]
        if not len(unknown_leaders):
            break
        jarr = np.nonzero(known)[0]
        if not full_scan and len(jarr) > _SWEEP_PREFIX:
            jarr = jarr[:_SWEEP_PREFIX]
        else:
            full_scan = True
        progressed = False
        for a in unknown_leaders:
            if known[a]:
                continue  # derived earlier in this pass
            v = tau[jarr] + a
            v[v >= M] -= M
            c1 = known[v]
            if not c1.any():
                continue
            idx1 = np.nonzero(c1)[0]
            i = tau[v[idx1]]
            d = (i - jarr[idx1]) % M
            c2 = known[d]
            if not c2.any():
                continue
            first = idx1[int(np.nonzero(c2)[0][0])]
            j = int(jarr[first])
            i0 = int(tau[(int(tau[j]) + int(a)) % M])
            val = (int(tau[(i0 - j) % M]) + j - int(tau[j])) % M
            add_closed(int(a), val, "chain")
            progressed = True
        if progressed:
            full_scan = False
        elif full_scan:
            break
        else:
            full_scan = True
    return table


def _sweep_pairs(table, budget):
    """Chaining sweep scanning (i, j) pairs of known elements, restart on
    progress. Used above the flat-array cap; `budget` caps pair checks."""
    M = table.modulus
    checked = 0
    while True:
        values = {}
        for lead, (v, _) in table.entries.items():
            k, val = lead, v
            while True:
                values[k] = val
                k = (k << 1) % M
                val = (val << 1) % M
                if k == lead:
                    break
        elements = sorted(values)
        progressed = False
        for i in elements:
            ti = values[i]
            for j in elements:
                if j == i:
                    continue
                checked += 1
                if budget is not None and checked > budget:
                    return table
                td = values.get((i - j) % M)
                if td is None:
                    continue
                arg = (ti - values[j]) % M
                if arg == 0 or arg in values:
                    continue
                table.add_entry(arg, (td + j - values[j]) % M, "chain")
                zech_closure(table)
                progressed = True
                break
            if progressed:
                break
        if not progressed:
            return table


def chain_sweep(table, budget=None):
    """Derive every entry reachable by difference chaining; in place.

    Up to the flat-array cap the sweep always reaches the fixpoint; above
    it, the pair scan stops after `budget` candidate checks (a finite
    default, since fixpoints at large degree are out of reach anyway).
    """
    zech_closure(table)
    if table.n <= FLAT_ARRAY_CAP:
        return _sweep_flat(table)
    return _sweep_pairs(table, CHAIN_BUDGET if budget is None else budget)


def zech_subfield_lift(table_m, n):
    """Lift a degree-m table to degree-n entries at multiples of r.

    With m | n and beta = alpha^r for r = (2^n - 1)/(2^m - 1),
    tau_n(r j) = r tau_m(j). Returns a fresh degree-n fragment.
    """
    m = table_m.n
    if n % m:
        raise ValueError(f"{m} does not divide {n}: invalid subfield")
    M = (1 << n) - 1
    r = M // ((1 << m) - 1)
    frag = ZechTable(n)
    for lead in sorted(table_m.entries):
        v = table_m.entries[lead][0]
        frag.add_entry((r * lead) % M, (r * v) % M, "subfield")
    return frag


def build_zech_table(p, mode="auto", cap=BRUTEFORCE_CAP, lift=True, seeds=None,
                     budget=None):
    """Seed, close, chain and (optionally) subfield-lift until complete.

    mode 'bruteforce' indexes all 2^n states (n <= cap); 'propagate' starts
    from the trinomial identity or explicit `seeds` [(k, tau(k)), ...] and
    runs the chaining sweep; 'auto' picks propagate for trinomials and
    falls back to brute force. Incompleteness is reported via the table's
    completeness flag, not an exception.
    """
    n = degree(p)
    try:
        if not is_primitive(p):
            raise ValueError(f"{poly_to_set_notation(p)} is not primitive")
    except UnsupportedDegreeError:
        pass  # no factorization of 2^n - 1 bundled; taken on trust
    exps = poly_exponents(p)
    is_trinomial = len(exps) == 3 and exps[-1] == 0
    if mode == "auto":
        if seeds or is_trinomial:
            mode = "propagate"
        elif n <= cap:
            mode = "bruteforce"
        else:
            raise ResourceCapError(
                f"n = {n} exceeds brute-force cap and {poly_to_set_notation(p)} "
                "offers no trinomial seed; supply seeds"
            )
    if mode == "bruteforce":
        return zech_bruteforce(p, cap=cap)
    if mode != "propagate":
        raise ValueError(f"unknown mode {mode!r}")

    if seeds:
        table = ZechTable(n, p=p)
        for k, v in seeds:
            table.add_entry(k, v, "seed")
    else:
        table = zech_seed_trinomial(p)
    chain_sweep(table, budget=budget)
    if table.complete or not lift:
        return table

    for m in sorted(d for d in range(2, n) if n % d == 0):
        M = table.modulus
        r = M // ((1 << m) - 1)
        sub_p, _ = associated_irreducible(p, r)
        if degree(sub_p) != m:
            continue
        try:
            sub_table = build_zech_table(sub_p, mode="auto", cap=cap, lift=lift,
                                         budget=budget)
        except (ResourceCapError, ValueError):
            continue
        frag = zech_subfield_lift(sub_table, n)
        for lead in sorted(frag.entries):
            v, prov = frag.entries[lead]
            table.add_entry(lead, v, prov)
        chain_sweep(table, budget=budget)
        if table.complete:
            break
    return table
