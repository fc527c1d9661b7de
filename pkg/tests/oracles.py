"""Independent brute-force oracles the implementation is checked against.

These deliberately avoid the package's own search strategies: the RDP
oracle joins precomputed decomposition lists instead of subtracting, the
ideal oracle is a plain fixpoint closure, the state oracle walks a
rational grid, and the isomorphism oracle tries raw permutations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def rdp_oracle(E):
    """(holds, counterexample) by joining decomposition tables."""
    decomp = {k: [] for k in E.elements()}
    for a in E.elements():
        for b in E.elements():
            k = E.table[a][b]
            if k is not None:
                decomp[k].append((a, b))
    sums = {}
    for a in E.elements():
        for b in E.elements():
            k = E.table[a][b]
            if k is not None:
                sums.setdefault(k, []).append((a, b))
    for total, pairs in sums.items():
        for (a1, a2) in pairs:
            for (b1, b2) in pairs:
                ok = False
                for (c11, c12) in decomp[a1]:
                    for (c21, c22) in decomp[a2]:
                        if E.table[c11][c21] == b1 and \
                                E.table[c12][c22] == b2:
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False, (a1, a2, b1, b2)
    return True, None


def ideal_closure_oracle(E, seeds):
    """Least ideal containing the seeds: alternate downward and sum closure."""
    current = set(seeds) | {E.zero}
    while True:
        grown = set(current)
        for b in list(grown):
            for a in E.elements():
                if E.leq(a, b):
                    grown.add(a)
        for a in list(grown):
            for b in list(grown):
                k = E.table[a][b]
                if k is not None:
                    grown.add(k)
        if grown == current:
            return frozenset(current)
        current = grown


def _grid(max_denom):
    vals = {Fraction(0), Fraction(1)}
    for q in range(1, max_denom + 1):
        for p in range(q + 1):
            vals.add(Fraction(p, q))
    return sorted(vals)


def state_exists_oracle(E, max_denom=12):
    """Backtracking search for a state with grid values.

    Propagates forced values through the sum table before branching, so
    heavily constrained fixtures finish immediately.
    """
    grid = _grid(max_denom)
    values = {E.zero: Fraction(0), E.one: Fraction(1)}

    def propagate(vals):
        vals = dict(vals)
        changed = True
        while changed:
            changed = False
            for a in E.elements():
                for b in E.elements():
                    k = E.table[a][b]
                    if k is None:
                        continue
                    known = [x in vals for x in (a, b, k)]
                    if all(known):
                        if vals[a] + vals[b] != vals[k]:
                            return None
                    elif known == [True, True, False]:
                        v = vals[a] + vals[b]
                        if not 0 <= v <= 1:
                            return None
                        vals[k] = v
                        changed = True
                    elif known == [True, False, True]:
                        v = vals[k] - vals[a]
                        if not 0 <= v <= 1:
                            return None
                        vals[b] = v
                        changed = True
                    elif known == [False, True, True]:
                        v = vals[k] - vals[b]
                        if not 0 <= v <= 1:
                            return None
                        vals[a] = v
                        changed = True
        return vals

    def search(vals):
        vals = propagate(vals)
        if vals is None:
            return None
        missing = [a for a in E.elements() if a not in vals]
        if not missing:
            return vals
        a = missing[0]
        for v in grid:
            got = search({**vals, a: v})
            if got is not None:
                return got
        return None

    return search(values)


def iso_permutation_oracle(E, F):
    """Exhaustive permutation search for an isomorphism (n <= 6)."""
    if E.n != F.n:
        return None
    for perm in itertools.permutations(range(F.n)):
        if perm[E.zero] != F.zero or perm[E.one] != F.one:
            continue
        ok = True
        for a in E.elements():
            for b in E.elements():
                k = E.table[a][b]
                fk = F.table[perm[a]][perm[b]]
                if (k is None) != (fk is None):
                    ok = False
                    break
                if k is not None and perm[k] != fk:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return perm
    return None


def infinitesimal_oracle(E, a):
    """Whether n*a stays defined while iterating n up to the carrier size."""
    if a == E.zero:
        return True
    cur = a
    for _ in range(E.n + 1):
        nxt = E.table[cur][a]
        if nxt is None:
            return False
        cur = nxt
    return True
