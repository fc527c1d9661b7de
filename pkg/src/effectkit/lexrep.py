"""The representation engine.

Ordered/directed fiber decompositions, additive section families, the
reconstruction of a host as an interval in a lexicographic product, the
action of a group homomorphism on such intervals, classification of
local hosts with retractive radicals, and subdirect decomposition
through prime ideals.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from . import lindsl, pogroup
from .effalg import (EffectAlgebra, FiniteEffectAlgebra,
                     IntervalEffectAlgebra, check_rdp, classify_order,
                     enumerate_algebra, infinitesimals, interval_algebra,
                     is_archimedean, sample_carrier)
from .errors import (CarrierError, NotEnumerableError,
                     UnsupportedOperationError)
from .ideals import (FiniteIdeal, Quotient, SymbolicIdeal, all_ideals,
                     canonical_fiber_ideal, is_prime_ideal, is_retractive,
                     is_riesz, is_simple, is_strict, local_and_radical,
                     quotient, quotient_by_fiber, recognize, zero_ideal)
from .linsolve import gauss_solve, matrix_rank
from .morphisms import (AffineHom, FiniteHom, iso_search, projection_hom,
                        verify_hom)
from .pogroup import ConePoGroup, ProductCone, lex_product
from .states import (HuDecomposition, HuState, hu_state_to_decomposition,
                     projection_hu_state, _target_box)
from .vecs import Vec, rat_str
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)

F = Fraction


def canonical_decomposition(E: IntervalEffectAlgebra) -> HuDecomposition:
    """Fibers by head value at the declared split."""
    return hu_state_to_decomposition(E, projection_hu_state(E))


def _fiber_samples(E: IntervalEffectAlgebra, D: HuDecomposition,
                   budget: Budget) -> dict[Vec, list]:
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples, budget.window)
    fibers: dict[Vec, list] = {}
    for x in pool:
        fibers.setdefault(D.fiber_of(x), []).append(x)
    return fibers


def _finite_fibers(E: FiniteEffectAlgebra,
                   D: HuDecomposition) -> dict[Vec, list[int]]:
    fibers: dict[Vec, list[int]] = {}
    for x in E.elements():
        fibers.setdefault(D.assign[x], []).append(x)
    return fibers


@dataclass(frozen=True)
class OrderedReport:
    fiber_order: Verdict
    sum_existence: Verdict
    agree: Verdict
    pairs_checked: int

    @property
    def verdict(self) -> Verdict:
        if self.fiber_order.holds and self.sum_existence.holds:
            return self.fiber_order
        if not self.fiber_order.holds:
            return self.fiber_order
        return self.sum_existence


def is_ordered_decomposition(E: EffectAlgebra, D: HuDecomposition,
                             budget: Budget = DEFAULT_BUDGET
                             ) -> OrderedReport:
    """Fibers increase with their index.

    Checks the order criterion (elements of a lower fiber sit below
    elements of a higher one) and the equivalent sum-existence
    criterion (lower index pairs always add), and reports whether they
    agreed on the probes.
    """
    if isinstance(E, FiniteEffectAlgebra):
        fibers = _finite_fibers(E, D)
        order_w = None
        sums_w = None
        pairs = 0
        for s, t in itertools.permutations(fibers, 2):
            if not D.target.lt(s, t):
                continue
            for x in fibers[s]:
                for y in fibers[t]:
                    pairs += 1
                    if not E.leq(x, y):
                        order_w = order_w or (E.labels[x], E.labels[y])
        u = D.target.unit
        for w, v in itertools.product(fibers, repeat=2):
            if not D.target.lt(w + v, u):
                continue
            for x in fibers[w]:
                for y in fibers[v]:
                    if not E.defined(x, y):
                        sums_w = sums_w or (E.labels[x], E.labels[y])
        fiber_order = proved("all cross-fiber pairs ordered") \
            if order_w is None else refuted("fiber pair out of order",
                                            witness=order_w)
        sum_existence = proved("all low-index sums defined") \
            if sums_w is None else refuted("undefined low-index sum",
                                           witness=sums_w)
        agree = proved("criteria agree") \
            if fiber_order.holds == sum_existence.holds \
            else refuted("criteria disagree")
        return OrderedReport(fiber_order, sum_existence, agree, pairs)
    return _ordered_symbolic(E, D, budget)


def _ordered_symbolic(E: IntervalEffectAlgebra, D: HuDecomposition,
                      budget: Budget) -> OrderedReport:
    structural = D.head_rank is not None
    fibers = _fiber_samples(E, D, budget)
    u = D.target.unit
    order_w = None
    sums_w = None
    pairs = 0
    for s, t in itertools.permutations(fibers, 2):
        if not D.target.lt(s, t):
            continue
        for x, y in zip(fibers[s], fibers[t]):
            pairs += 1
            if not E.leq(x, y):
                order_w = order_w or (x, y)
    for w, v in itertools.product(fibers, repeat=2):
        if not D.target.lt(w + v, u):
            continue
        for x, y in zip(fibers[w], fibers[v]):
            if not E.defined(x, y):
                sums_w = sums_w or (x, y)
    if order_w is None:
        fiber_order = proved(
            "strictly larger head dominates lexicographically; agreed on"
            f" {pairs} sampled pairs") if structural else witnessed(
            f"ordered on {pairs} sampled pairs", budget=budget)
    else:
        fiber_order = refuted("fiber pair out of order", witness=order_w,
                              budget=budget)
    if sums_w is None:
        sum_existence = proved(
            "head sums below the unit keep the lex bound; agreed on"
            " samples") if structural else witnessed(
            "low-index sums defined on samples", budget=budget)
    else:
        sum_existence = refuted("undefined low-index sum", witness=sums_w,
                                budget=budget)
    agree = proved("criteria agree") \
        if fiber_order.holds == sum_existence.holds \
        else refuted("criteria disagree")
    return OrderedReport(fiber_order, sum_existence, agree, pairs)


def is_directed_decomposition(E: EffectAlgebra, D: HuDecomposition,
                              budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Every fiber is upward and downward directed."""
    if isinstance(E, FiniteEffectAlgebra):
        fibers = _finite_fibers(E, D)
        for t, members in fibers.items():
            for x in members:
                for y in members:
                    if not any(E.leq(x, z) and E.leq(y, z)
                               for z in members):
                        return refuted("fiber not upward directed",
                                       witness=(t, E.labels[x], E.labels[y]))
                    if not any(E.leq(z, x) and E.leq(z, y)
                               for z in members):
                        return refuted("fiber not downward directed",
                                       witness=(t, E.labels[x], E.labels[y]))
        return proved("all fibers directed (exhaustive)")
    if D.head_rank is not None:
        tail = E.tail_group()
        v = pogroup.is_directed(tail, budget)
        if v.kind == "proved":
            return proved("fibers are tail cosets and the tail group is"
                          " directed")
        if not v.holds:
            return v
    fibers = _fiber_samples(E, D, budget)
    for t, members in fibers.items():
        for x, y in itertools.combinations(members, 2):
            up = any(E.leq(x, z) and E.leq(y, z) for z in members)
            dn = any(E.leq(z, x) and E.leq(z, y) for z in members)
            if not (up and dn):
                return unknown("no sampled bound inside the fiber",
                               budget=budget)
    return witnessed("sampled fibers directed", budget=budget)


def ordered_decomposition_consequences(E: EffectAlgebra, D: HuDecomposition,
                                       budget: Budget = DEFAULT_BUDGET
                                       ) -> list[tuple[str, Verdict]]:
    """The standing facts about an ordered decomposition: the zero fiber
    is a sum-closed Riesz ideal of infinitesimals, middle fibers add
    exactly, and over-unit index pairs never add."""
    u = D.target.unit
    out: list[tuple[str, Verdict]] = []
    if isinstance(E, FiniteEffectAlgebra):
        fibers = _finite_fibers(E, D)
        zero_members = fibers.get(Vec.zero(u.rank), [])
        closed = all(E.table[x][y] is not None
                     and D.assign[E.table[x][y]].is_zero()
                     for x in zero_members for y in zero_members)
        out.append(("zero-fiber-closed",
                    proved() if closed else refuted()))
        inf = infinitesimals(E)
        out.append(("zero-fiber-infinitesimal",
                    proved() if set(zero_members) <= inf else refuted()))
        ideal = FiniteIdeal(frozenset(zero_members))
        out.append(("zero-fiber-riesz", is_riesz(E, ideal)))
        out.append(("middle-sums", _finite_middle_sums(E, D, fibers)))
        out.append(("over-unit-sums", _finite_over_unit(E, D, fibers)))
        return out
    fibers = _fiber_samples(E, D, budget)
    r = E.split()
    zero_members = fibers.get(Vec.zero(u.rank), [])
    bad = next((x + y for x in zero_members for y in zero_members
                if not (E.defined(x, y)
                        and D.fiber_of(x + y).is_zero())), None)
    out.append(("zero-fiber-closed",
                witnessed("closed on samples", budget=budget)
                if bad is None else refuted(witness=bad, budget=budget)))
    inf = infinitesimals(E)
    bad = next((x for x in zero_members if not lindsl.holds(inf, x)), None)
    out.append(("zero-fiber-infinitesimal",
                witnessed("inside the infinitesimal predicate",
                          budget=budget)
                if bad is None else refuted(witness=bad, budget=budget)))
    out.append(("zero-fiber-riesz",
                is_riesz(E, canonical_fiber_ideal(E, r), budget)))
    out.append(("middle-sums", _symbolic_middle_sums(E, D, fibers, budget)))
    out.append(("over-unit-sums", _symbolic_over_unit(E, D, fibers, budget)))
    return out


def _finite_middle_sums(E, D, fibers) -> Verdict:
    u = D.target.unit
    for s, v in itertools.product(fibers, repeat=2):
        if not D.target.lt(s + v, u):
            continue
        target = fibers.get(s + v, [])
        for x in fibers[s]:
            for y in fibers[v]:
                if E.table[x][y] is None or E.table[x][y] not in target:
                    return refuted("sum misses its fiber",
                                   witness=(E.labels[x], E.labels[y]))
        for z in target:
            hit = any(E.table[x][y] == z
                      for x in fibers[s] for y in fibers[v])
            if not hit:
                return refuted("fiber element not a cross sum",
                               witness=E.labels[z])
    return proved("fiber sums exact (exhaustive)")


def _finite_over_unit(E, D, fibers) -> Verdict:
    u = D.target.unit
    for t, v in itertools.product(fibers, repeat=2):
        if D.target.contains(u - (t + v)):
            continue
        for x in fibers[t]:
            for y in fibers[v]:
                if E.table[x][y] is not None:
                    return refuted("over-unit pair has a defined sum",
                                   witness=(E.labels[x], E.labels[y]))
    return proved("no over-unit sums (exhaustive)")


def _symbolic_middle_sums(E, D, fibers, budget) -> Verdict:
    u = D.target.unit
    checked = 0
    for s, v in itertools.product(fibers, repeat=2):
        if not D.target.lt(s + v, u):
            continue
        for x, y in zip(fibers[s], fibers[v]):
            checked += 1
            if not E.defined(x, y) or D.fiber_of(x + y) != s + v:
                return refuted("sum misses its fiber", witness=(x, y),
                               budget=budget)
        for z in fibers.get(s + v, []):
            x = fibers[s][0]
            if not E.leq(x, z):
                continue
            checked += 1
            if D.fiber_of(z - x) != v:
                return refuted("difference misses its fiber",
                               witness=(z, x), budget=budget)
    return witnessed(f"fiber sums exact on {checked} samples", budget=budget)


def _symbolic_over_unit(E, D, fibers, budget) -> Verdict:
    u = D.target.unit
    checked = 0
    for t, v in itertools.product(fibers, repeat=2):
        if D.target.contains(u - (t + v)):
            continue
        for x, y in zip(fibers[t], fibers[v]):
            checked += 1
            if E.defined(x, y):
                return refuted("over-unit pair has a defined sum",
                               witness=(x, y), budget=budget)
    return witnessed(f"{checked} over-unit pairs undefined", budget=budget)


def decompositions_equal(E: EffectAlgebra, D1: HuDecomposition,
                         D2: HuDecomposition,
                         budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Fiberwise equality of two decompositions (uniqueness check for
    ordered and directed ones)."""
    if isinstance(E, FiniteEffectAlgebra):
        if D1.assign == D2.assign:
            return proved("identical fibers")
        diff = next(i for i in E.elements()
                    if D1.assign[i] != D2.assign[i])
        return refuted("fibers differ", witness=E.labels[diff])
    rng = random.Random(budget.seed)
    for x in sample_carrier(E, rng, budget.samples, budget.window):
        if D1.fiber_of(x) != D2.fiber_of(x):
            return refuted("fibers differ", witness=x, budget=budget)
    return witnessed("fibers agree on samples", budget=budget)


# ---------------------------------------------------------------------------
# The quotient by the zero fiber


@dataclass(frozen=True)
class HeadIso:
    quotient_algebra: FiniteEffectAlgebra
    iso: FiniteHom
    verdict: Verdict


def quotient_head_iso(E: EffectAlgebra,
                      D: HuDecomposition) -> HeadIso:
    """E modulo the zero fiber, with an isomorphism onto the enumerated
    target interval."""
    head_table = enumerate_algebra(
        interval_algebra(D.target, D.target.unit))
    if isinstance(E, FiniteEffectAlgebra):
        zero_fiber = FiniteIdeal(frozenset(
            x for x in E.elements() if D.assign[x].is_zero()))
        q = quotient(E, zero_fiber)
        index = {v: i for i, v in enumerate(head_table.coords)}
        mapping: list[Optional[int]] = [None] * q.algebra.n
        for x in E.elements():
            t = D.assign[x]
            k = q.class_of[x]
            if mapping[k] is None:
                mapping[k] = index[t]
            elif mapping[k] != index[t]:
                return HeadIso(q.algebra, None,
                               refuted("classes straddle fibers",
                                       witness=E.labels[x]))
        h = FiniteHom(q.algebra, head_table, tuple(mapping))
        v = verify_hom(h)
        if v.holds and len(set(mapping)) == q.algebra.n == head_table.n:
            v = proved("classes are fibers; the induced map is an"
                       " isomorphism")
        return HeadIso(q.algebra, h, v)
    alg, proj = quotient_by_fiber(E, canonical_fiber_ideal(E, E.split()))
    if not isinstance(alg, FiniteEffectAlgebra):
        raise NotEnumerableError("head interval is not enumerable")
    match = iso_search(alg, head_table)
    if match is None:
        return HeadIso(alg, None, refuted("quotient not isomorphic to the"
                                          " target interval"))
    return HeadIso(alg, match, proved("quotient classes are fibers,"
                                      " isomorphic to the target interval"))


# ---------------------------------------------------------------------------
# Strong families


@dataclass(frozen=True)
class StrongFamily:
    """An additive section t -> c_t of the fiber indexing: c_t lands in
    fiber t, sums of indices map to sums of values, and c_u = 1."""

    target: ConePoGroup
    entries: tuple[tuple[Vec, object], ...]

    def value(self, t: Vec):
        for key, val in self.entries:
            if key == t:
                return val
        raise KeyError(str(t))


def verify_strong_family(E: EffectAlgebra, D: HuDecomposition,
                         fam: StrongFamily) -> Verdict:
    u = D.target.unit
    table = dict(fam.entries)
    if u not in table:
        return refuted("c_u missing")
    one = E.one if isinstance(E, FiniteEffectAlgebra) else E.unit
    if table[u] != one:
        return refuted("c_u != 1", witness=table[u])
    for t, c in table.items():
        if D.fiber_of(c) != t:
            return refuted("section leaves its fiber", witness=(t, c))
    for s, t in itertools.product(table, repeat=2):
        if s + t in table:
            cs, ct = table[s], table[t]
            total = E.table[cs][ct] if isinstance(E, FiniteEffectAlgebra) \
                else (cs + ct if E.defined(cs, ct) else None)
            if total is None or total != table[s + t]:
                return refuted("section not additive", witness=(s, t))
    return proved("section conditions verified on the whole index box")


def find_strong_family(E: EffectAlgebra, D: HuDecomposition,
                       budget: Budget = DEFAULT_BUDGET
                       ) -> tuple[Verdict, Optional[StrongFamily]]:
    """Search for an additive section of an ordered directed
    decomposition.

    Finite hosts search fiber members directly (failure is exhaustive).
    Symbolic hosts solve the linear divisibility system for the values
    on the index box generators; an unsolvable system is returned as a
    certificate.
    """
    box = _target_box(D.target)
    if isinstance(E, FiniteEffectAlgebra):
        return _family_finite(E, D, box)
    return _family_symbolic(E, D, box, budget)


def _family_finite(E: FiniteEffectAlgebra, D: HuDecomposition,
                   box: list[Vec]) -> tuple[Verdict, Optional[StrongFamily]]:
    fibers = _finite_fibers(E, D)
    u = D.target.unit
    order = sorted(box, key=str)
    table: dict[Vec, int] = {Vec.zero(u.rank): E.zero, u: E.one}

    def consistent() -> bool:
        for s, t in itertools.product(table, repeat=2):
            if s + t in table:
                k = E.table[table[s]][table[t]]
                if k is None or k != table[s + t]:
                    return False
        return True

    def search(idx: int) -> bool:
        if idx == len(order):
            return consistent()
        t = order[idx]
        if t in table:
            return search(idx + 1)
        for member in fibers.get(t, []):
            table[t] = member
            if consistent() and search(idx + 1):
                return True
            del table[t]
        return False

    if search(0):
        fam = StrongFamily(D.target, tuple(sorted(table.items(), key=str)))
        return proved("section found by exhaustive search"), fam
    return refuted("no additive section exists (exhausted fiber"
                   " choices)"), None


def _family_symbolic(E: IntervalEffectAlgebra, D: HuDecomposition,
                     box: list[Vec], budget: Budget
                     ) -> tuple[Verdict, Optional[StrongFamily]]:
    r = E.split()
    u_tail = E.unit_tail()
    head = E.head_group()
    tail_rank = E.rank - r
    if u_tail.is_zero():
        entries = tuple((t, t.concat(Vec.zero(tail_rank))) for t in box)
        return proved("unit tail is zero: c_t = (t, 0)"), \
            StrongFamily(D.target, entries)
    # Values on box generators e_i (scaled by steps) determine the section;
    # additivity forces sum(k_i * v_i) = u_tail with k_i = units of e_i.
    ks = []
    for i in range(r):
        step = head.steps[i]
        ks.append(int(E.unit.coords[i] / step) if step != 0 else 0)
    if any(k == 0 for k in ks) and len(ks) > 1:
        return unknown("degenerate head box generator"), None
    if r == 1:
        m = ks[0]
        c1 = Vec(tuple(c / m for c in E.unit.coords))
        if E.group.in_group(c1):
            entries = tuple((t, c1.scale(t.coords[0] / head.steps[0]))
                            for t in box)
            return proved("unit divides in the lattice"), \
                StrongFamily(D.target, entries)
        return refuted(
            f"every section needs c with {m}*c = {E.unit}, which has no"
            " solution in the group lattice",
            witness=f"{m}*c = {E.unit}"), None
    d = math.gcd(*ks)
    share = Vec(tuple(c / d for c in u_tail.coords))
    if not E.tail_group().in_group(share):
        return refuted(
            f"gcd({ks}) = {d} does not divide the unit tail {u_tail}",
            witness=f"{d}*v = {u_tail}"), None
    coeffs = _bezout(ks, d)
    vs = [share.scale(a) for a in coeffs]
    entries = []
    for t in box:
        tail_val = Vec.zero(tail_rank)
        for i in range(r):
            mult = t.coords[i] / head.steps[i]
            tail_val = tail_val + vs[i].scale(mult)
        entries.append((t, t.concat(tail_val)))
    fam = StrongFamily(D.target, tuple(entries))
    v = verify_strong_family(E, D, fam)
    if v.holds:
        return proved("lattice section from a gcd decomposition"), fam
    return unknown("constructed section failed verification"), None


def _bezout(ks: list[int], d: int) -> list[int]:
    """Integers a_i with sum(a_i * k_i) = d (d a multiple of the gcd)."""
    acc_g = ks[0]
    acc_coeffs = [1] + [0] * (len(ks) - 1)
    for i in range(1, len(ks)):
        g2, a, b = _ext_gcd(acc_g, ks[i])
        acc_coeffs = [c * a for c in acc_coeffs]
        acc_coeffs[i] = b
        acc_g = g2
    scale = d // acc_g
    return [c * scale for c in acc_coeffs]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


# ---------------------------------------------------------------------------
# Representation as an interval in a lexicographic product


@dataclass(frozen=True)
class Representation:
    head: ConePoGroup
    tail: ConePoGroup
    family: StrongFamily
    target: EffectAlgebra
    to_target: Callable
    from_target: Callable
    checks: tuple[tuple[str, Verdict], ...]

    @property
    def verdict(self) -> Verdict:
        for name, v in self.checks:
            if not v.holds:
                return refuted(f"{name}: {v.reason}", v.witness, v.budget)
        kinds = {v.kind for _, v in self.checks}
        if kinds == {"proved"}:
            return proved("representation verified")
        budget = next((v.budget for _, v in self.checks
                       if v.budget is not None), None)
        return witnessed("representation verified on samples",
                         budget=budget)


def represent(E: EffectAlgebra, D: HuDecomposition, fam: StrongFamily,
              budget: Budget = DEFAULT_BUDGET) -> Representation:
    """Rebuild the host as the interval [0, (u, 0)] of head lex tail.

    The map sends x in fiber t to (t, x - c_t); its inverse shifts back.
    The tail group is recovered from the zero fiber: on symbolic hosts
    it is read off the declared cone split, and on finite hosts the zero
    fiber collapses to {0}, so the tail is the zero group.
    """
    checks: list[tuple[str, Verdict]] = []
    checks.append(("section", verify_strong_family(E, D, fam)))
    if isinstance(E, FiniteEffectAlgebra):
        return _represent_finite(E, D, fam, checks)
    return _represent_symbolic(E, D, fam, checks, budget)


def _represent_finite(E: FiniteEffectAlgebra, D: HuDecomposition,
                      fam: StrongFamily, checks) -> Representation:
    fibers = _finite_fibers(E, D)
    zero_fiber = fibers.get(Vec.zero(D.target.unit.rank), [])
    if set(zero_fiber) != {E.zero}:
        checks.append(("tail-recovery", refuted(
            "zero fiber is not trivial; no finite host admits a nonzero"
            " directed tail cone")))
    else:
        checks.append(("tail-recovery", proved(
            "zero fiber is {0}: the difference group is the zero group")))
    tail = ConePoGroup(0, ProductCone(0), steps=())
    head_table = enumerate_algebra(interval_algebra(D.target, D.target.unit))
    index = {v: i for i, v in enumerate(head_table.coords)}
    mapping = tuple(index[D.assign[x]] for x in E.elements())
    iso = FiniteHom(E, head_table, mapping)
    hom_v = verify_hom(iso)
    bij = len(set(mapping)) == E.n == head_table.n
    checks.append(("isomorphism",
                   hom_v if not hom_v.holds else
                   (proved("bijective homomorphism onto the target"
                           " interval") if bij else
                    refuted("map not bijective"))))
    inv = {v: k for k, v in enumerate(mapping)}
    return Representation(
        head=D.target, tail=tail, family=fam, target=head_table,
        to_target=lambda x: mapping[x],
        from_target=lambda y: inv[y],
        checks=tuple(checks))


def _represent_symbolic(E: IntervalEffectAlgebra, D: HuDecomposition,
                        fam: StrongFamily, checks,
                        budget: Budget) -> Representation:
    r = E.split()
    head = E.head_group()
    tail = E.tail_group()
    checks.append(("tail-recovery", proved(
        "zero fiber is the tail cone of the declared split")))
    section = {t: c for t, c in fam.entries}

    def shift(t: Vec) -> Vec:
        return section[t].tail(r)

    def fwd(x: Vec) -> Vec:
        t = x.head(r)
        return t.concat(x.tail(r) - shift(t))

    def bwd(y: Vec) -> Vec:
        t = y.head(r)
        return t.concat(y.tail(r) + shift(t))

    target = IntervalEffectAlgebra(
        lex_product(head, tail), head.unit.concat(Vec.zero(tail.rank)),
        head_rank=r)
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples, budget.window)
    bad = next((x for x in pool
                if not target.contains(fwd(x)) or bwd(fwd(x)) != x), None)
    round_bad = None
    for y in sample_carrier(target, rng, budget.samples, budget.window):
        if not E.contains(bwd(y)) or fwd(bwd(y)) != y:
            round_bad = y
            break
    if bad is None and round_bad is None:
        checks.append(("bijection", witnessed(
            f"both round trips are identities on {len(pool)} samples",
            budget=budget)))
    else:
        checks.append(("bijection", refuted(
            "round trip failed", witness=bad or round_bad, budget=budget)))
    add_bad = None
    fiber_bad = None
    for x, y in itertools.combinations(pool, 2):
        if E.defined(x, y):
            if fwd(x + y) != fwd(x) + fwd(y) or \
                    not target.defined(fwd(x), fwd(y)):
                add_bad = (x, y)
                break
    for x in pool:
        if fwd(x).head(r) != D.fiber_of(x):
            fiber_bad = x
            break
    checks.append(("additivity",
                   witnessed("image sums match on sampled defined sums",
                             budget=budget) if add_bad is None
                   else refuted("additivity fails", witness=add_bad,
                                budget=budget)))
    checks.append(("fiber-alignment",
                   witnessed("fiber t maps into {t} x tail", budget=budget)
                   if fiber_bad is None
                   else refuted("fiber misaligned", witness=fiber_bad,
                                budget=budget)))
    checks.append(("tail-rdp", pogroup.check_rdp_cone(tail, budget)))
    return Representation(head=head, tail=tail, family=fam, target=target,
                          to_target=fwd, from_target=bwd,
                          checks=tuple(checks))


@dataclass(frozen=True)
class RepresentAttempt:
    ordered: OrderedReport
    directed: Verdict
    family_verdict: Verdict
    family: Optional[StrongFamily]
    representation: Optional[Representation]

    @property
    def verdict(self) -> Verdict:
        if not self.ordered.verdict.holds:
            return self.ordered.verdict
        if not self.directed.holds:
            return self.directed
        if not self.family_verdict.holds:
            return self.family_verdict
        if self.representation is None:
            return unknown("no representation constructed")
        return self.representation.verdict


def represent_canonical(E: IntervalEffectAlgebra,
                        budget: Budget = DEFAULT_BUDGET) -> RepresentAttempt:
    """The full pipeline on the canonical decomposition of a split host."""
    D = canonical_decomposition(E)
    ordered = is_ordered_decomposition(E, D, budget)
    directed = is_directed_decomposition(E, D, budget)
    fam_v, fam = find_strong_family(E, D, budget)
    rep = None
    if ordered.verdict.holds and directed.holds and fam_v.holds:
        rep = represent(E, D, fam, budget)
    return RepresentAttempt(ordered, directed, fam_v, fam, rep)


# ---------------------------------------------------------------------------
# Functor action on tail homomorphisms


@dataclass(frozen=True)
class FunctorResult:
    hom: AffineHom
    cone_preserving: Verdict
    homomorphism: Verdict
    injective: Verdict
    surjective: Verdict


def functor_map(E: IntervalEffectAlgebra, target_tail: ConePoGroup,
                matrix: tuple[tuple[Fraction, ...], ...],
                budget: Budget = DEFAULT_BUDGET) -> FunctorResult:
    """Lift a tail-group homomorphism to the interval hosts:
    (t, g) -> (t, h(g)).

    The host must be a split interval with zero unit tail and the matrix
    a cone-preserving additive map between the tails.
    """
    r = E.split()
    if not E.unit_tail().is_zero():
        raise UnsupportedOperationError(
            "functor action needs a unit of the form (u, 0)")
    head = E.head_group()
    source_tail = E.tail_group()
    rows = len(matrix)
    if rows != target_tail.rank or any(len(row) != source_tail.rank
                                       for row in matrix):
        raise CarrierError("matrix shape does not match the tails")
    cone_ok = _cone_preserving(source_tail, target_tail, matrix, budget)
    target = IntervalEffectAlgebra(
        lex_product(head, target_tail),
        head.unit.concat(Vec.zero(target_tail.rank)), head_rank=r)
    block = []
    for i in range(r):
        block.append(tuple(F(1 if j == i else 0) for j in range(E.rank)))
    for row in matrix:
        block.append(tuple(F(0) for _ in range(r)) + tuple(row))
    hom = AffineHom(E, target, tuple(block))
    hom_v = verify_hom(hom, budget)
    inj = matrix_rank([list(row) for row in matrix]) == source_tail.rank
    injective = proved("matrix has full column rank") if inj else \
        refuted("matrix kernel is nontrivial")
    surjective = _sampled_surjective(source_tail, target_tail, matrix, budget)
    return FunctorResult(hom, cone_ok, hom_v, injective, surjective)


def _cone_preserving(source: ConePoGroup, target: ConePoGroup, matrix,
                     budget: Budget) -> Verdict:
    mat = [[row[j] for j in range(source.rank)] for row in matrix]
    image_outside = lindsl.substitute(
        lindsl.negate(target.formula()), mat, [F(0)] * target.rank)
    bad = lindsl.feasible(lindsl.conj(source.formula(), image_outside),
                          source.rank)
    if bad is None:
        return proved("cone containment decided by linear feasibility")
    if source.dense or source.in_group(bad):
        return refuted("cone element with image outside the target cone",
                       witness=bad)
    rng = random.Random(budget.seed)
    for g in pogroup.sample_vectors(source, rng, budget.samples,
                                    budget.window):
        if not source.contains(g):
            continue
        img = Vec(tuple(sum(r * c for r, c in zip(row, g.coords))
                        for row in matrix))
        if not target.contains(img):
            return refuted("cone element with image outside the target"
                           " cone", witness=g, budget=budget)
    return witnessed("cone preserved on lattice samples", budget=budget)


def _sampled_surjective(source_tail: ConePoGroup, target_tail: ConePoGroup,
                        matrix, budget: Budget) -> Verdict:
    rng = random.Random(budget.seed)
    rows = [list(row) for row in matrix]
    ncols = source_tail.rank
    injective = matrix_rank(rows) == ncols
    kernel_basis = _kernel_basis(rows, ncols)
    for g1 in pogroup.sample_vectors(target_tail, rng, budget.samples,
                                     budget.window):
        sol = gauss_solve(rows, list(g1.coords))
        if sol is None:
            return refuted("target element outside the image", witness=g1,
                           budget=budget)
        if source_tail.in_group(Vec(tuple(sol))):
            continue
        if injective:
            return refuted("the unique preimage is not in the source"
                           " lattice", witness=g1, budget=budget)
        if not _lattice_adjustment(source_tail, sol, kernel_basis,
                                   budget.window):
            return unknown("no lattice preimage found within the window",
                           budget=budget)
    return witnessed("sampled target elements have lattice preimages",
                     budget=budget)


def _kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[Vec]:
    basis = []
    for i in range(ncols):
        probe = [F(1 if j == i else 0) for j in range(ncols)]
        image = [sum(r[j] * probe[j] for j in range(ncols)) for r in rows]
        if all(v == 0 for v in image):
            basis.append(Vec(tuple(probe)))
    return basis


def _lattice_adjustment(source: ConePoGroup, sol, basis: list[Vec],
                        window: int) -> bool:
    if not basis:
        return False
    base = Vec(tuple(sol))
    for combo in itertools.product(range(-window, window + 1),
                                   repeat=len(basis)):
        shifted = base
        for k, b in zip(combo, basis):
            shifted = shifted + b.scale(k)
        if source.in_group(shifted):
            return True
    return False


# ---------------------------------------------------------------------------
# Classification: local hosts with retractive strict radicals


@dataclass(frozen=True)
class ClassReport:
    """The three equivalent descriptions of a representable host.

    branch_local:  local with a retractive and strict radical;
    branch_strong: a strong decomposition over an antilattice simple
                   head with Archimedean head interval;
    branch_repr:   an interval in head lex tail for such a head.
    """

    local: Verdict
    radical: Optional[object]
    radical_strict: Verdict
    radical_retractive: Verdict
    head_description: str
    head_antilattice: Verdict
    head_simple: Verdict
    head_archimedean: Verdict
    strong_family: Verdict
    representation: Verdict

    @property
    def branch_local(self) -> Verdict:
        return _conjoin((self.local, self.radical_strict,
                         self.radical_retractive))

    @property
    def branch_strong(self) -> Verdict:
        return _conjoin((self.strong_family, self.head_antilattice,
                         self.head_simple, self.head_archimedean))

    @property
    def branch_repr(self) -> Verdict:
        return _conjoin((self.representation, self.head_antilattice,
                         self.head_simple, self.head_archimedean))

    @property
    def consistent(self) -> Verdict:
        branches = [self.branch_local, self.branch_strong, self.branch_repr]
        decided = [b for b in branches if b.decided]
        if len(decided) <= 1:
            return proved("vacuous: fewer than two branches decided")
        outcomes = {b.holds for b in decided}
        if len(outcomes) == 1:
            return proved(f"{len(decided)} decidable branches agree")
        return refuted("classification branches disagree")


def _conjoin(verdicts) -> Verdict:
    for v in verdicts:
        if v.kind == "refuted":
            return v
    if any(v.kind == "unknown" for v in verdicts):
        return unknown("a component is undecided")
    if all(v.kind == "proved" for v in verdicts):
        return proved("all components hold")
    budget = next((v.budget for v in verdicts if v.budget is not None), None)
    return witnessed("all components hold", budget=budget)


def classify_local_retractive(E: EffectAlgebra,
                              budget: Budget = DEFAULT_BUDGET) -> ClassReport:
    """Decide the classification branches on one instance.

    Symbolic hosts with a split use the declared head; simple hosts (no
    split) take the zero ideal as a weak lexicographic ideal, making the
    host itself the head over a zero tail. Finite hosts with coordinate
    data use the identity decomposition into their coordinate box.
    """
    rep = local_and_radical(E, budget)
    if isinstance(E, IntervalEffectAlgebra) and E.head_rank is not None:
        rad = rep.radical if rep.radical is not None \
            else canonical_fiber_ideal(E, E.split())
        rad_strict = is_strict(E, rad, budget)
        rad_retr, _ = is_retractive(E, rad, budget)
        head = E.head_group()
        head_desc = f"declared head of rank {head.rank}, unit {head.unit}"
        head_anti = _head_antilattice(head, budget)
        head_simple = _head_simple(E, budget)
        head_arch = proved("product-cone head interval") \
            if isinstance(head.cone, ProductCone) \
            else unknown("head interval Archimedeanity undecided")
        attempt = represent_canonical(E, budget)
        return ClassReport(rep.local, rad, rad_strict, rad_retr, head_desc,
                           head_anti, head_simple, head_arch,
                           attempt.family_verdict, attempt.verdict)
    if isinstance(E, IntervalEffectAlgebra):
        simple = is_simple(E, budget)
        cls = classify_order(E, budget)
        arch = is_archimedean(E, budget)
        zero = zero_ideal(E)
        rad_strict = is_strict(E, zero, budget)
        rad_retr, _ = is_retractive(E, zero, budget)
        head_desc = ("the host group itself over a zero tail (weak"
                     " lexicographic zero ideal)")
        fam = StrongFamily(E.group, ((E.unit, E.unit),))
        return ClassReport(rep.local, rep.radical, rad_strict, rad_retr,
                           head_desc, cls.antilattice, simple, arch,
                           proved("identity section over a zero tail"),
                           proved("identity representation with zero"
                                  " tail"))
    return _classify_finite_host(E, rep, budget)


def _head_antilattice(head: ConePoGroup, budget: Budget) -> Verdict:
    lin = pogroup.is_linear_cone(head.cone)
    if lin.holds:
        return proved("head is linearly ordered")
    if lin.kind == "refuted" and isinstance(head.cone, ProductCone):
        return refuted("head box has incomparable elements with bounds",
                       witness=lin.witness)
    probe = IntervalEffectAlgebra(head, head.unit)
    return classify_order(probe, budget).antilattice


def _head_simple(E: IntervalEffectAlgebra, budget: Budget) -> Verdict:
    from .ideals import is_maximal_fiber
    return is_maximal_fiber(E, canonical_fiber_ideal(E, E.split()), budget)


def _classify_finite_host(E: FiniteEffectAlgebra, rep,
                          budget: Budget) -> ClassReport:
    rad = rep.radical
    rad_strict = is_strict(E, rad)
    rad_retr, _ = is_retractive(E, rad)
    if E.coords is None:
        return ClassReport(rep.local, rad, rad_strict, rad_retr,
                           "no coordinate data", unknown("no head"),
                           unknown("no head"), unknown("no head"),
                           unknown("no head"), unknown("no head"))
    rank = E.coords[0].rank
    target = ConePoGroup(rank, ProductCone(rank), unit=E.coords[E.one])
    D = HuDecomposition(target=target, assign=E.coords)
    head_table = enumerate_algebra(interval_algebra(target, target.unit))
    head_anti = classify_order(head_table).antilattice
    head_simple = is_simple(head_table)
    fam_v, fam = find_strong_family(E, D, budget)
    representation: Verdict
    if fam_v.holds:
        built = represent(E, D, fam, budget)
        representation = built.verdict
    else:
        representation = fam_v
    return ClassReport(rep.local, rad, rad_strict, rad_retr,
                       f"coordinate box of rank {rank}", head_anti,
                       head_simple, proved("finite box"), fam_v,
                       representation)


# ---------------------------------------------------------------------------
# Subdirect decomposition through prime ideals


@dataclass(frozen=True)
class SubdirectResult:
    primes: tuple[FiniteIdeal, ...]
    quotients: tuple[Quotient, ...]
    intersection_trivial: Verdict
    order_embedding: Verdict
    projections_surjective: Verdict
    factors_antilattice: Verdict
    bounds_preserved: Verdict

    @property
    def verdict(self) -> Verdict:
        parts = (self.intersection_trivial, self.order_embedding,
                 self.projections_surjective, self.factors_antilattice,
                 self.bounds_preserved)
        return _conjoin(parts)

    def embed(self, x: int) -> tuple[int, ...]:
        return tuple(q.class_of[x] for q in self.quotients)


def subdirect_decompose(E: FiniteEffectAlgebra,
                        budget: Budget = DEFAULT_BUDGET) -> SubdirectResult:
    """Embed a finite RDP host into the product of its prime quotients.

    Checks that proper primes intersect trivially, that the induced map
    is an order embedding with surjective projections, that each factor
    is an antilattice, and that existing meets and joins are preserved
    componentwise.
    """
    rdp = check_rdp(E)
    if not rdp.holds:
        raise UnsupportedOperationError(
            "subdirect decomposition needs RDP: " + rdp.describe())
    primes = tuple(I for I in all_ideals(E)
                   if len(I.elements) < E.n and is_prime_ideal(E, I).holds)
    meet_all = set(E.elements())
    for P in primes:
        meet_all &= P.elements
    intersection = proved("proper primes intersect in {0}") \
        if meet_all == {E.zero} else refuted(
        "intersection of proper primes is not {0}; this contradicts the"
        " subdirect representation theorem for RDP hosts",
        witness=sorted(E.labels[i] for i in meet_all))
    quotients = tuple(quotient(E, P) for P in primes)

    def embed(x):
        return tuple(q.class_of[x] for q in quotients)

    emb_w = None
    for a in E.elements():
        for b in E.elements():
            pointwise = all(q.algebra.leq(q.class_of[a], q.class_of[b])
                            for q in quotients)
            if pointwise != E.leq(a, b):
                emb_w = (E.labels[a], E.labels[b])
    order_embedding = proved("f(a) <= f(b) iff a <= b on all pairs") \
        if emb_w is None else refuted("order embedding fails", witness=emb_w)
    surj = all(set(q.class_of) == set(q.algebra.elements())
               for q in quotients)
    projections = proved("every projection is onto") if surj else \
        refuted("a projection misses a class")
    anti_w = None
    for q in quotients:
        cls = classify_order(q.algebra)
        if not cls.antilattice.holds:
            anti_w = q
    factors = proved("every factor is an antilattice") if anti_w is None \
        else refuted("non-antilattice factor")
    bounds = _bounds_preserved(E, quotients)
    return SubdirectResult(primes, quotients, intersection, order_embedding,
                           projections, factors, bounds)


def _bounds_preserved(E: FiniteEffectAlgebra, quotients) -> Verdict:
    for a in E.elements():
        for b in E.elements():
            m = E.meet(a, b)
            if m is not None:
                for q in quotients:
                    qm = q.algebra.meet(q.class_of[a], q.class_of[b])
                    if qm != q.class_of[m]:
                        return refuted("meet not preserved",
                                       witness=(E.labels[a], E.labels[b]))
            j = E.join(a, b)
            if j is not None:
                for q in quotients:
                    qj = q.algebra.join(q.class_of[a], q.class_of[b])
                    if qj != q.class_of[j]:
                        return refuted("join not preserved",
                                       witness=(E.labels[a], E.labels[b]))
    return proved("existing meets and joins preserved componentwise")
