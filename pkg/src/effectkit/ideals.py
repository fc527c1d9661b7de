"""Ideal theory on both carrier representations.

Finite hosts are handled exhaustively. Symbolic hosts restrict ideals
to linear-inequality predicates; two recognized families get structural
treatment and everything else falls back to sampled verdicts:

* the zero fiber ``{x : head(x) = 0, tail(x) >= 0}`` at a lexicographic
  boundary of the cone, and
* coordinate ideals ``{x : x_S = 0, x >= 0}`` of product cones.

On dense (rational) hosts, class equality and quotient comparisons
modulo a predicate ideal are decided exactly by linear feasibility; on
lattices those answers are used one-sidedly and combined with sampling.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from . import lindsl, pogroup
from .effalg import (EffectAlgebra, FiniteEffectAlgebra,
                     IntervalEffectAlgebra, enumerate_algebra, check_rdp,
                     infinitesimals, sample_carrier, verify_axioms)
from .errors import (CarrierError, NotRieszError, UnsupportedOperationError)
from .lindsl import Formula, conj, disj, negate
from .pogroup import ProductCone, cone_formula
from .vecs import Vec, rat_str
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)

F = Fraction


@dataclass(frozen=True)
class FiniteIdeal:
    elements: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def sorted(self) -> list[int]:
        return sorted(self.elements)


@dataclass(frozen=True)
class SymbolicIdeal:
    """Membership predicate over group coordinates (within the carrier).

    ``split`` marks the zero fiber at a lex boundary; ``coord_zero``
    marks a coordinate ideal of a product cone. Both enable structural
    shortcuts.
    """

    predicate: Formula
    split: Optional[int] = None
    coord_zero: Optional[frozenset[int]] = None
    is_zero: bool = False
    label: str = ""

    def contains(self, E: IntervalEffectAlgebra, v: Vec) -> bool:
        return E.contains(v) and lindsl.holds(self.predicate, v)


Ideal = Union[FiniteIdeal, SymbolicIdeal]


def ideal_members(E: FiniteEffectAlgebra, I: FiniteIdeal) -> list[int]:
    return I.sorted()


def zero_ideal(E: EffectAlgebra) -> Ideal:
    if isinstance(E, FiniteEffectAlgebra):
        return FiniteIdeal(frozenset({E.zero}))
    return SymbolicIdeal(lindsl.zero_vec_formula(E.rank), is_zero=True,
                         label="0")


def full_ideal(E: EffectAlgebra) -> Ideal:
    if isinstance(E, FiniteEffectAlgebra):
        return FiniteIdeal(frozenset(E.elements()))
    return SymbolicIdeal(cone_formula(E.group.cone), label="E")


def canonical_fiber_ideal(E: IntervalEffectAlgebra, r: int) -> SymbolicIdeal:
    """The zero fiber {(0, g) : g in tail cone} at boundary r."""
    head_zero = lindsl.shift_vars(lindsl.zero_vec_formula(r), 0, E.rank)
    tail_pos = lindsl.shift_vars(cone_formula(E.tail_group(r).cone),
                                 r, E.rank)
    return SymbolicIdeal(conj(head_zero, tail_pos), split=r,
                         label=f"fiber0@{r}")


def coordinate_ideal(E: IntervalEffectAlgebra,
                     zero_coords: frozenset[int]) -> SymbolicIdeal:
    """{x >= 0 : x_i = 0 for i in S} on a product-cone host."""
    atoms = []
    for i in range(E.rank):
        unit = tuple(F(1 if j == i else 0) for j in range(E.rank))
        atoms.append(lindsl.Atom(unit, lindsl.EQ if i in zero_coords
                                 else lindsl.GE))
    name = "{" + ",".join(str(i) for i in sorted(zero_coords)) + "}=0"
    return SymbolicIdeal(lindsl.And(tuple(atoms)), coord_zero=zero_coords,
                         label=name)


def canonical_ideals(E: IntervalEffectAlgebra) -> list[SymbolicIdeal]:
    """The candidate ideals generated for a symbolic host."""
    out: list[SymbolicIdeal] = []
    for r in E.lex_boundaries():
        if not E.unit.head(r).is_zero():
            out.append(canonical_fiber_ideal(E, r))
    if isinstance(E.group.cone, ProductCone) and E.rank >= 2:
        for size in range(1, E.rank):
            for combo in itertools.combinations(range(E.rank), size):
                out.append(coordinate_ideal(E, frozenset(combo)))
    return out


def recognize(E: IntervalEffectAlgebra, I: SymbolicIdeal) -> SymbolicIdeal:
    """Attach structural metadata when the predicate matches a canonical
    form (exact over dense hosts, sound over lattices since the lattice
    embeds in Q^rank)."""
    if I.split is not None or I.coord_zero is not None or I.is_zero:
        return I
    if lindsl.feasible(conj(_carrier_formula(E), I.predicate,
                            lindsl.nonzero_formula(E.rank)), E.rank) is None:
        return replace(I, is_zero=True)
    for cand in canonical_ideals(E):
        if lindsl.equivalent_on_rationals(I.predicate, cand.predicate,
                                          E.rank):
            return replace(cand, label=I.label or cand.label)
    return I


# ---------------------------------------------------------------------------
# Membership systems over predicates (dense-exact, lattice one-sided)


def _carrier_formula(E: IntervalEffectAlgebra) -> Formula:
    cf = E.group.formula()
    neg = [[F(-1 if i == j else 0) for j in range(E.rank)]
           for i in range(E.rank)]
    upper = lindsl.substitute(cf, neg, list(E.unit.coords))
    return conj(cf, upper)


def _blocks(f: Formula, nblocks: int, rank: int, shift: Vec,
            signs: dict[int, F]) -> Formula:
    """f evaluated at ``sum(signs[b] * block_b) + shift`` where the
    variable space consists of nblocks rank-sized blocks."""
    total = nblocks * rank
    matrix = []
    for i in range(rank):
        row = [F(0)] * total
        for b, s in signs.items():
            row[b * rank + i] = s
        matrix.append(row)
    return lindsl.substitute(f, matrix, list(shift.coords))


def classes_equal(E: IntervalEffectAlgebra, I: SymbolicIdeal, x: Vec,
                  y: Vec) -> Optional[bool]:
    """Whether x ~ y modulo I: x - e = y - f with e, f in I below x, y.

    Exact over dense hosts; over lattices None means only a non-lattice
    rational witness was found.
    """
    rank = E.rank
    ideal = conj(_carrier_formula(E), I.predicate)
    cf = E.group.formula()
    # One block of variables, e; then f = e + (y - x) is forced, and
    # f <= y reduces to the same inequality as e <= x.
    sys = conj(
        _blocks(ideal, 1, rank, Vec.zero(rank), {0: F(1)}),        # e in I
        _blocks(cf, 1, rank, x, {0: F(-1)}),                       # e <= x
        _blocks(ideal, 1, rank, y - x, {0: F(1)}),                 # f in I
    )
    witness = lindsl.feasible(sys, rank)
    if witness is None:
        return False
    if E.group.in_group(witness):
        return True
    return None if E.group.lattice else True


def quotient_leq_witness(E: IntervalEffectAlgebra, I: SymbolicIdeal, x: Vec,
                         y: Vec) -> Optional[bool]:
    """Whether x/I <= y/I, via representatives x' = x - e + e' and
    y' = y - f + f' with x' <= y'. Exact over dense hosts."""
    rank = E.rank
    carrier = _carrier_formula(E)
    cf = E.group.formula()
    ideal = conj(carrier, I.predicate)
    n = 4  # blocks: e, e', f, f'
    E_, Ep, G_, Gp = 0, 1, 2, 3
    parts = [
        _blocks(ideal, n, rank, Vec.zero(rank), {E_: F(1)}),
        _blocks(ideal, n, rank, Vec.zero(rank), {Ep: F(1)}),
        _blocks(ideal, n, rank, Vec.zero(rank), {G_: F(1)}),
        _blocks(ideal, n, rank, Vec.zero(rank), {Gp: F(1)}),
        _blocks(cf, n, rank, x, {E_: F(-1)}),                      # e <= x
        _blocks(cf, n, rank, y, {G_: F(-1)}),                      # f <= y
        # x' = x - e + e' in carrier with e' <= x'
        _blocks(carrier, n, rank, x, {E_: F(-1), Ep: F(1)}),
        _blocks(cf, n, rank, x, {E_: F(-1)}),                      # x'-e' >= 0
        # y' = y - f + f' in carrier with f' <= y'
        _blocks(carrier, n, rank, y, {G_: F(-1), Gp: F(1)}),
        _blocks(cf, n, rank, y, {G_: F(-1)}),
        # y' - x' in the cone
        _blocks(cf, n, rank, y - x, {E_: F(1), Ep: F(-1),
                                     G_: F(-1), Gp: F(1)}),
    ]
    witness = lindsl.feasible(conj(*parts), n * rank)
    if witness is None:
        return False
    if all(E.group.in_group(Vec(witness.coords[i * rank:(i + 1) * rank]))
           for i in range(n)):
        return True
    return None if E.group.lattice else True


# ---------------------------------------------------------------------------
# Ideal verification


def is_ideal(E: EffectAlgebra, I: Ideal,
             budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Downward closed, closed under defined sums, contains 0."""
    if isinstance(E, FiniteEffectAlgebra):
        S = I.elements
        if E.zero not in S:
            return refuted("0 missing")
        for b in S:
            for a in E.elements():
                if E.leq(a, b) and a not in S:
                    return refuted("not downward closed",
                                   witness=(E.labels[a], E.labels[b]))
        for a in S:
            for b in S:
                k = E.table[a][b]
                if k is not None and k not in S:
                    return refuted("not closed under sums",
                                   witness=(E.labels[a], E.labels[b]))
        return proved("ideal conditions verified exhaustively")
    I = recognize(E, I)
    if I.is_zero:
        return proved("zero ideal")
    if I.split is not None or I.coord_zero is not None:
        return proved("canonical ideal shape")
    P = I.predicate
    if not lindsl.holds(P, Vec.zero(E.rank)):
        return refuted("0 missing")
    rank = E.rank
    carrier = _carrier_formula(E)
    cf = E.group.formula()
    member = conj(carrier, P)
    missing = conj(carrier, negate(P))
    down = conj(
        _blocks(member, 2, rank, Vec.zero(rank), {1: F(1)}),       # y in I
        _blocks(missing, 2, rank, Vec.zero(rank), {0: F(1)}),      # x not
        _blocks(cf, 2, rank, Vec.zero(rank), {1: F(1), 0: F(-1)})) # x <= y
    bad = lindsl.feasible(down, 2 * rank)
    if bad is not None and (E.group.dense or _lattice_pair(E, bad)):
        x, y = bad.head(rank), bad.tail(rank)
        return refuted("not downward closed", witness=(x, y))
    sums = conj(
        _blocks(member, 2, rank, Vec.zero(rank), {0: F(1)}),
        _blocks(member, 2, rank, Vec.zero(rank), {1: F(1)}),
        _blocks(missing, 2, rank, Vec.zero(rank), {0: F(1), 1: F(1)}))
    bad = lindsl.feasible(sums, 2 * rank)
    if bad is not None and (E.group.dense or _lattice_pair(E, bad)):
        return refuted("not closed under sums",
                       witness=(bad.head(rank), bad.tail(rank)))
    if E.group.dense:
        return proved("ideal conditions decided by linear feasibility")
    return witnessed("no lattice counterexample found", budget=budget)


def _lattice_pair(E: IntervalEffectAlgebra, w: Vec) -> bool:
    r = E.rank
    return all(E.group.in_group(Vec(w.coords[i * r:(i + 1) * r]))
               for i in range(w.rank // r))


def nontrivial(E: EffectAlgebra, I: Ideal) -> tuple[Verdict, Verdict]:
    """(nonzero, proper) verdicts."""
    if isinstance(E, FiniteEffectAlgebra):
        nz = proved() if I.elements != {E.zero} else refuted("zero ideal")
        pr = proved() if I.elements != set(E.elements()) else \
            refuted("improper ideal")
        return nz, pr
    if isinstance(I, SymbolicIdeal) and I.is_zero:
        return refuted("zero ideal"), proved(witness=E.unit)
    carrier = _carrier_formula(E)
    wit = lindsl.feasible(conj(carrier, I.predicate,
                               lindsl.nonzero_formula(E.rank)), E.rank)
    if wit is not None and (E.group.dense or E.group.in_group(wit)):
        nz = proved(witness=wit)
    elif wit is None:
        nz = refuted("zero ideal")
    else:
        nz = _lattice_nonzero(E, I)
    wit = lindsl.feasible(conj(carrier, negate(I.predicate)), E.rank)
    if wit is not None and (E.group.dense or E.group.in_group(wit)):
        pr = proved(witness=wit)
    elif wit is None:
        pr = refuted("improper ideal")
    else:
        pr = _lattice_missing(E, I)
    return nz, pr


def _lattice_nonzero(E: IntervalEffectAlgebra, I: SymbolicIdeal) -> Verdict:
    for v in pogroup.lattice_points(E.group, 3):
        if not v.is_zero() and I.contains(E, v):
            return proved(witness=v)
    return unknown("no lattice witness in window")


def _lattice_missing(E: IntervalEffectAlgebra, I: SymbolicIdeal) -> Verdict:
    for v in pogroup.lattice_points(E.group, 3):
        if E.contains(v) and not lindsl.holds(I.predicate, v):
            return proved(witness=v)
    if E.contains(E.unit) and not lindsl.holds(I.predicate, E.unit):
        return proved(witness=E.unit)
    return unknown("no lattice witness in window")


# ---------------------------------------------------------------------------
# Generation


def generated_ideal(E: EffectAlgebra, seeds,
                    budget: Budget = DEFAULT_BUDGET) -> Optional[Ideal]:
    """The least ideal containing the seeds.

    Finite RDP hosts use the sums-of-minorants description; other finite
    hosts use the closure fixpoint (the two agree under RDP). Symbolic
    hosts support a single generator whose shape the cone recognizes;
    anything else returns None (no decidable closure).
    """
    if isinstance(E, FiniteEffectAlgebra):
        if check_rdp(E).holds:
            return FiniteIdeal(_generated_rdp(E, seeds))
        return FiniteIdeal(_generated_fixpoint(E, seeds))
    seeds = list(seeds)
    if len(seeds) != 1:
        return None
    g = seeds[0]
    E.require(g)
    formula = _generated_symbolic(E, E.group.cone, g, budget)
    if formula is None:
        return None
    return SymbolicIdeal(formula, label=f"gen{g}")


def _generated_rdp(E: FiniteEffectAlgebra, seeds) -> frozenset[int]:
    minorants = {x for x in E.elements()
                 if any(E.leq(x, a) for a in seeds)} | {E.zero}
    reach = set(minorants)
    frontier = set(minorants)
    while frontier:
        new = set()
        for s in reach:
            for d in minorants:
                k = E.table[s][d]
                if k is not None and k not in reach:
                    new.add(k)
        reach |= new
        frontier = new
    return frozenset(reach)


def _generated_fixpoint(E: FiniteEffectAlgebra, seeds) -> frozenset[int]:
    current = set(seeds) | {E.zero}
    while True:
        grown = set(current)
        for b in list(grown):
            grown.update(a for a in E.elements() if E.leq(a, b))
        for a in list(grown):
            for b in list(grown):
                k = E.table[a][b]
                if k is not None:
                    grown.add(k)
        if grown == current:
            return frozenset(current)
        current = grown


def _generated_symbolic(E: IntervalEffectAlgebra, cone, g: Vec,
                        budget: Budget) -> Optional[Formula]:
    rank = g.rank
    if isinstance(cone, ProductCone):
        atoms = []
        for i, gi in enumerate(g.coords):
            unit = tuple(F(1 if j == i else 0) for j in range(rank))
            atoms.append(lindsl.Atom(unit,
                                     lindsl.GE if gi > 0 else lindsl.EQ))
        return lindsl.And(tuple(atoms))
    if isinstance(cone, pogroup.LexCone):
        r = pogroup.cone_rank(cone.left)
        gl, gr = g.head(r), g.tail(r)
        if gl.is_zero():
            sub = _generated_symbolic(E, cone.right, gr, budget)
            if sub is None:
                return None
            return conj(lindsl.shift_vars(lindsl.zero_vec_formula(r), 0, rank),
                        lindsl.shift_vars(sub, r, rank))
        left = _generated_symbolic(E, cone.left, gl, budget)
        if left is None:
            return None
        left_part = conj(lindsl.shift_vars(left, 0, rank),
                         lindsl.shift_vars(lindsl.nonzero_formula(r), 0, rank))
        zero_part = conj(
            lindsl.shift_vars(lindsl.zero_vec_formula(r), 0, rank),
            lindsl.shift_vars(cone_formula(cone.right), r, rank))
        return disj(left_part, zero_part)
    # Custom cone: detect that g generates everything (u below a multiple).
    for n in range(1, budget.window + 10):
        if E.group.contains(g.scale(n) - E.unit):
            return cone_formula(cone)
    return None


# ---------------------------------------------------------------------------
# Riesz property


def is_riesz(E: EffectAlgebra, I: Ideal,
             budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """i <= a + b splits as i <= i_a + i_b with i_a, i_b in I below a, b."""
    rdp = check_rdp(E, budget) if isinstance(E, IntervalEffectAlgebra) \
        else check_rdp(E)
    if rdp.holds:
        kind = "proved" if rdp.kind == "proved" else "witnessed"
        return Verdict(kind, "host has RDP, so every ideal is Riesz",
                       budget=rdp.budget)
    if isinstance(E, FiniteEffectAlgebra):
        S = I.elements
        for i in S:
            for a in E.elements():
                for b in E.elements():
                    k = E.table[a][b]
                    if k is None or not E.leq(i, k):
                        continue
                    if not _riesz_split(E, S, i, a, b):
                        return refuted(
                            "no splitting",
                            witness=tuple(E.labels[t] for t in (i, a, b)))
        return proved("splittings found exhaustively")
    return unknown("Riesz check unavailable without RDP on symbolic hosts",
                   budget=budget)


def _riesz_split(E: FiniteEffectAlgebra, S, i: int, a: int, b: int) -> bool:
    for ia in S:
        if not E.leq(ia, a):
            continue
        for ib in S:
            if not E.leq(ib, b):
                continue
            k = E.table[ia][ib]
            if k is not None and E.leq(i, k):
                return True
    return False


# ---------------------------------------------------------------------------
# Enumeration on finite hosts


def all_ideals(E: FiniteEffectAlgebra) -> list[FiniteIdeal]:
    """Every ideal, found by closing singleton extensions to a fixpoint."""
    if isinstance(E, IntervalEffectAlgebra):
        raise UnsupportedOperationError(
            "ideal enumeration needs a finite carrier")
    found = {frozenset({E.zero})}
    frontier = [frozenset({E.zero})]
    while frontier:
        base = frontier.pop()
        for x in E.elements():
            if x in base:
                continue
            grown = _generated_fixpoint(E, set(base) | {x})
            if grown not in found:
                found.add(grown)
                frontier.append(grown)
    return [FiniteIdeal(s) for s in sorted(found, key=lambda s: (len(s),
                                                                 sorted(s)))]


def maximal_ideals(E: FiniteEffectAlgebra) -> list[FiniteIdeal]:
    proper = [I for I in all_ideals(E) if len(I.elements) < E.n]
    out = []
    for I in proper:
        if not any(I.elements < J.elements for J in proper):
            out.append(I)
    return out


def ideal_generated_by(E: FiniteEffectAlgebra, x: int) -> frozenset[int]:
    return _generated_fixpoint(E, {x})


def is_prime_ideal(E: EffectAlgebra, I: Ideal,
                   budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """I0(x) cap I0(y) inside I forces x or y into I (proper ideals)."""
    if isinstance(E, FiniteEffectAlgebra):
        if len(I.elements) == E.n:
            return refuted("improper ideal")
        singles = {x: ideal_generated_by(E, x) for x in E.elements()}
        for x in E.elements():
            for y in E.elements():
                if x in I.elements or y in I.elements:
                    continue
                if singles[x] & singles[y] <= I.elements:
                    return refuted("prime condition fails",
                                   witness=(E.labels[x], E.labels[y]))
        return proved("prime condition verified exhaustively")
    I = recognize(E, I)
    quotient_anti = _quotient_antilattice(E, I, budget)
    if quotient_anti is None:
        return unknown("quotient shape not recognized", budget=budget)
    if quotient_anti.holds:
        return Verdict(quotient_anti.kind,
                       "quotient is an antilattice: " + quotient_anti.reason,
                       budget=quotient_anti.budget)
    return Verdict(quotient_anti.kind,
                   "quotient is not an antilattice: " + quotient_anti.reason,
                   quotient_anti.witness, quotient_anti.budget)


def _quotient_antilattice(E: IntervalEffectAlgebra, I: SymbolicIdeal,
                          budget: Budget) -> Optional[Verdict]:
    if I.split is not None:
        head = E.head_group(I.split)
        lin = pogroup.is_linear_cone(head.cone)
        if lin.holds:
            return proved("head interval is linearly ordered")
        if isinstance(head.cone, ProductCone) and head.rank >= 2:
            return refuted("head interval is a non-linear lattice box",
                           witness=lin.witness)
        return None
    if I.coord_zero is not None and isinstance(E.group.cone, ProductCone):
        rest = E.rank - len(I.coord_zero)
        if rest <= 1:
            return proved("quotient collapses to a chain")
        return refuted("quotient is a non-linear box")
    if I.is_zero:
        from .effalg import classify_order
        cls = classify_order(E, budget)
        return cls.antilattice
    return None


def radical(E: FiniteEffectAlgebra) -> FiniteIdeal:
    maxima = maximal_ideals(E)
    if not maxima:
        return FiniteIdeal(frozenset(E.elements()))
    core = set(E.elements())
    for I in maxima:
        core &= I.elements
    return FiniteIdeal(frozenset(core))


def is_local(E: FiniteEffectAlgebra) -> bool:
    return len(maximal_ideals(E)) == 1


def is_simple(E: EffectAlgebra, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Only the trivial ideals {0} and E exist."""
    if isinstance(E, FiniteEffectAlgebra):
        ideals = all_ideals(E)
        extra = [I for I in ideals
                 if I.elements not in ({E.zero}, set(E.elements()))]
        if extra:
            return refuted("nontrivial ideal",
                           witness=[E.labels[i] for i in extra[0].sorted()])
        return proved("only trivial ideals")
    for cand in canonical_ideals(E):
        nz, pr = nontrivial(E, cand)
        if nz.holds and pr.holds and is_ideal(E, cand, budget).holds:
            return refuted("nontrivial candidate ideal", witness=cand.label)
    rng = random.Random(budget.seed)
    bound = budget.window + 10
    for a in sample_carrier(E, rng, budget.samples, budget.window):
        if a.is_zero():
            continue
        if not any(E.group.contains(a.scale(n) - E.unit)
                   for n in range(1, bound)):
            return unknown(
                f"element not known to generate E within {bound} multiples",
                budget=budget)
    return witnessed("candidate ideals trivial and every sampled nonzero"
                     " element generates E", budget=budget)


# ---------------------------------------------------------------------------
# Quotients (finite hosts)


@dataclass(frozen=True)
class Quotient:
    algebra: FiniteEffectAlgebra
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    ideal: FiniteIdeal


def quotient(E: FiniteEffectAlgebra, I: FiniteIdeal,
             riesz: Optional[Verdict] = None) -> Quotient:
    """E modulo the congruence a ~ b iff a - e = b - f for e, f in I.

    Requires a Riesz ideal (checked unless a verdict is passed in).
    """
    if riesz is None:
        riesz = is_riesz(E, I)
    if not riesz.holds:
        raise NotRieszError("quotient needs a Riesz ideal")
    n = E.n
    related = [[False] * n for _ in range(n)]
    for a in range(n):
        for e in I.elements:
            if not E.leq(e, a):
                continue
            rest = E.minus(a, e)
            for f in I.elements:
                k = E.table[rest][f]
                if k is not None:
                    related[a][k] = True
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(n):
        for b in range(n):
            if related[a][b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(i) for i in range(n)})
    class_index = {r: k for k, r in enumerate(roots)}
    class_of = tuple(class_index[find(i)] for i in range(n))
    classes = tuple(tuple(i for i in range(n) if class_of[i] == k)
                    for k in range(len(roots)))
    table = []
    for U in classes:
        row: list[Optional[int]] = []
        for V in classes:
            results = {class_of[E.table[x][y]]
                       for x in U for y in V
                       if E.table[x][y] is not None}
            if len(results) > 1:
                raise NotRieszError(
                    "quotient sum not well defined; ideal is not Riesz")
            row.append(results.pop() if results else None)
        table.append(tuple(row))
    algebra = FiniteEffectAlgebra(
        labels=tuple(E.labels[cls[0]] + "/I" for cls in classes),
        table=tuple(table),
        zero=class_of[E.zero],
        one=class_of[E.one])
    check = verify_axioms(algebra)
    if not check.holds:
        raise NotRieszError(f"quotient fails axioms: {check.describe()}")
    return Quotient(algebra, class_of, classes, I)


def quotient_by_fiber(E: IntervalEffectAlgebra,
                      I: SymbolicIdeal) -> tuple[EffectAlgebra, object]:
    """Quotient of a symbolic host by a recognized canonical ideal.

    Returns (algebra, projection): the head interval (materialized when
    enumerable) with the head projection, or the coordinate projection
    for coordinate ideals of product hosts.
    """
    I = recognize(E, I)
    if I.split is not None:
        r = I.split
        head = E.head_interval(r)
        if head.enumerable:
            table = enumerate_algebra(head)
            index = {v: i for i, v in enumerate(table.coords)}
            return table, lambda x: index[x.head(r)]
        return head, lambda x: x.head(r)
    if I.coord_zero is not None and isinstance(E.group.cone, ProductCone):
        keep = [i for i in range(E.rank) if i not in I.coord_zero]
        G = pogroup.ConePoGroup(
            len(keep), ProductCone(len(keep)),
            steps=tuple(E.group.steps[i] for i in keep))
        target = IntervalEffectAlgebra(
            G.with_unit(Vec(tuple(E.unit.coords[i] for i in keep))),
            Vec(tuple(E.unit.coords[i] for i in keep)))
        proj = lambda x: Vec(tuple(x.coords[i] for i in keep))
        if target.enumerable:
            table = enumerate_algebra(target)
            index = {v: i for i, v in enumerate(table.coords)}
            return table, lambda x: index[proj(x)]
        return target, proj
    raise UnsupportedOperationError(
        "symbolic quotients need a recognized canonical ideal")


# ---------------------------------------------------------------------------
# Strictness


def is_strict(E: EffectAlgebra, I: Ideal,
              budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """x/I < y/I implies x < y."""
    if isinstance(E, FiniteEffectAlgebra):
        q = quotient(E, I)
        qa = q.algebra
        for x in E.elements():
            for y in E.elements():
                cx, cy = q.class_of[x], q.class_of[y]
                if cx != cy and qa.leq(cx, cy) and not E.lt(x, y):
                    return refuted("quotient order does not reflect",
                                   witness=(E.labels[x], E.labels[y]))
        return proved("implication verified exhaustively")
    I = recognize(E, I)
    if I.is_zero:
        return proved("classes modulo the zero ideal are singletons")
    if I.split is not None:
        tail_directed = pogroup.is_directed(E.tail_group(I.split), budget)
        if tail_directed.holds:
            return proved(
                "zero fiber at a lex boundary with directed tail: classes"
                " are fibers and the head order is strict on them")
    return _sampled_strict(E, I, budget)


def _sampled_strict(E: IntervalEffectAlgebra, I: SymbolicIdeal,
                    budget: Budget) -> Verdict:
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples, budget.window)
    checked = 0
    for x, y in itertools.combinations(pool, 2):
        for a, b in ((x, y), (y, x)):
            if E.lt(a, b):
                continue
            if a == b:
                continue
            checked += 1
            same = classes_equal(E, I, a, b)
            if same is not False:
                continue
            le = quotient_leq_witness(E, I, a, b)
            if le is True:
                return refuted("quotient order does not reflect",
                               witness=(a, b), budget=budget)
        if checked >= budget.samples:
            break
    return witnessed(f"no violation among {checked} sampled pairs",
                     budget=budget)


# ---------------------------------------------------------------------------
# Retractivity


@dataclass(frozen=True)
class Section:
    """A splitting of the canonical projection, as explicit graph data."""

    values: tuple  # finite host: class -> element; symbolic: box -> Vec

    def describe(self) -> str:
        return ", ".join(f"{k}->{v}" for k, v in self.values)


def is_retractive(E: EffectAlgebra, I: Ideal,
                  budget: Budget = DEFAULT_BUDGET
                  ) -> tuple[Verdict, Optional[Section]]:
    """Search for a homomorphic section of the canonical projection.

    Finite hosts search exhaustively (failure is a proof). Symbolic
    hosts handle recognized ideals: zero unit tail gives the section
    t -> (t, 0); chain heads reduce to a divisibility condition whose
    failure is a certificate; anything else is unknown after budget.
    """
    if isinstance(E, FiniteEffectAlgebra):
        return _retractive_finite(E, I)
    I = recognize(E, I)
    if I.is_zero:
        return proved("identity section"), Section((("x", "x"),))
    if I.coord_zero is not None and isinstance(E.group.cone, ProductCone):
        section = Section((("embed", "zero-padded coordinates"),))
        return proved("coordinate section pads zeros"), section
    if I.split is not None:
        return _retractive_fiber(E, I.split, budget)
    return unknown("no structural section and search space is infinite",
                   budget=budget), None


def _retractive_finite(E: FiniteEffectAlgebra,
                       I: FiniteIdeal) -> tuple[Verdict, Optional[Section]]:
    q = quotient(E, I)
    qa = q.algebra
    m = qa.n
    assignment: list[Optional[int]] = [None] * m
    assignment[qa.zero] = E.zero
    assignment[qa.one] = E.one
    if qa.zero == qa.one:
        return proved("degenerate quotient"), Section(((0, E.zero),))

    order = [k for k in range(m) if assignment[k] is None]

    def consistent(done: list[int]) -> bool:
        for u in done:
            for v in done:
                w = qa.table[u][v]
                if w is None:
                    continue
                s = E.table[assignment[u]][assignment[v]]
                if assignment[w] is not None:
                    if s != assignment[w]:
                        return False
                elif s is None:
                    return False
        return True

    def search(idx: int, done: list[int]) -> bool:
        if not consistent(done):
            return False
        if idx == len(order):
            return True
        k = order[idx]
        for member in q.classes[k]:
            assignment[k] = member
            if search(idx + 1, done + [k]):
                return True
        assignment[k] = None
        return False

    if search(0, [qa.zero, qa.one]):
        pairs = tuple((qa.labels[k], E.labels[assignment[k]])
                      for k in range(m))
        return proved("section found"), Section(pairs)
    return refuted("no section exists (exhausted all class"
                   " representatives)"), None


def _retractive_fiber(E: IntervalEffectAlgebra, r: int,
                      budget: Budget) -> tuple[Verdict, Optional[Section]]:
    u_tail = E.unit_tail(r)
    head = E.head_interval(r)
    if u_tail.is_zero():
        if head.enumerable:
            pairs = tuple((t, t.concat(Vec.zero(E.rank - r)))
                          for t in head.carrier_elements())
        else:
            pairs = (("t", "(t, 0)"),)
        return proved("unit tail is zero: t -> (t, 0) splits"), Section(pairs)
    if head.group.rank == 1:
        u_h = E.unit.coords[0]
        if E.group.steps[0] == 0:
            # dense chain head: the linear section t -> t * unit / u_h
            return proved("dense chain head: t -> t*unit/u_h splits"), \
                Section((("t", f"t*{E.unit}/{rat_str(u_h)}"),))
        m = int(u_h / E.group.steps[0])
        c = E.unit.scale(F(1, m))
        if E.group.in_group(c):
            box = list(head.carrier_elements())
            pairs = tuple((t, c.scale(t.coords[0] / E.group.steps[0]))
                          for t in box)
            return proved("unit divides in the lattice"), Section(pairs)
        eq = f"{m}*c = {E.unit}"
        return refuted(
            f"a section needs c with {eq}, unsolvable in the lattice",
            witness=eq), None
    return unknown("non-chain head with nonzero unit tail", budget=budget), \
        None


# ---------------------------------------------------------------------------
# Lexicographic ideals


@dataclass(frozen=True)
class LexIdealReport:
    nonzero: Verdict
    proper: Verdict
    strict: Verdict
    retractive: Verdict
    prime: Verdict
    section: Optional[Section]

    @property
    def verdict(self) -> Verdict:
        parts = {"nonzero": self.nonzero, "proper": self.proper,
                 "strict": self.strict, "retractive": self.retractive,
                 "prime": self.prime}
        for name, v in parts.items():
            if v.kind == "refuted":
                return refuted(f"{name} fails: {v.reason}", v.witness,
                               v.budget)
        if any(v.kind == "unknown" for v in parts.values()):
            blocked = [n for n, v in parts.items() if v.kind == "unknown"]
            return unknown("undecided: " + ", ".join(blocked))
        if all(v.kind == "proved" for v in parts.values()):
            return proved("strict, retractive, prime, and nontrivial")
        budgets = [v.budget for v in parts.values() if v.budget is not None]
        return witnessed("strict, retractive, prime, and nontrivial",
                         budget=budgets[0] if budgets else None)


def lexicographic_report(E: EffectAlgebra, I: Ideal,
                         budget: Budget = DEFAULT_BUDGET) -> LexIdealReport:
    """Strict + retractive + prime, with {0} != I != E."""
    nz, pr = nontrivial(E, I)
    strict = is_strict(E, I, budget)
    retr, section = is_retractive(E, I, budget)
    prime = is_prime_ideal(E, I, budget)
    return LexIdealReport(nz, pr, strict, retr, prime, section)


def is_lexicographic(E: EffectAlgebra, I: Ideal,
                     budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return lexicographic_report(E, I, budget).verdict


def is_weak_lexicographic(E: EffectAlgebra, I: Ideal,
                          budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """The variant that admits the zero ideal (I != E still required)."""
    rep = lexicographic_report(E, I, budget)
    parts = {"proper": rep.proper, "strict": rep.strict,
             "retractive": rep.retractive, "prime": rep.prime}
    for name, v in parts.items():
        if v.kind == "refuted":
            return refuted(f"{name} fails: {v.reason}", v.witness, v.budget)
    if any(v.kind == "unknown" for v in parts.values()):
        return unknown("undecided weak lexicographicity")
    if all(v.kind == "proved" for v in parts.values()):
        return proved("strict, retractive, prime (weak reading)")
    budgets = [v.budget for v in parts.values() if v.budget is not None]
    return witnessed("strict, retractive, prime (weak reading)",
                     budget=budgets[0] if budgets else None)


# ---------------------------------------------------------------------------
# Subalgebra generated by an ideal


def subalgebra_of_ideal(E: EffectAlgebra, I: Ideal):
    """The effect subalgebra generated by an ideal: I together with the
    complements of its members. Returns (members-or-predicate, verdict)."""
    if isinstance(E, FiniteEffectAlgebra):
        members = frozenset(I.elements
                            | {E.complement(i) for i in I.elements})
        if E.one not in members:
            return members, refuted("1 missing")
        for a in members:
            if E.complement(a) not in members:
                return members, refuted("not closed under complement",
                                        witness=E.labels[a])
        for a in members:
            for b in members:
                k = E.table[a][b]
                if k is not None and k not in members:
                    return members, refuted(
                        "not closed under sums",
                        witness=(E.labels[a], E.labels[b]))
        return members, proved("subalgebra conditions verified")
    neg = [[F(-1 if i == j else 0) for j in range(E.rank)]
           for i in range(E.rank)]
    mirrored = lindsl.substitute(I.predicate, neg, list(E.unit.coords))
    predicate = disj(I.predicate, mirrored)
    return predicate, witnessed("closure holds on complement pairs by"
                                " construction")


# ---------------------------------------------------------------------------
# Inclusion and the largest strict ideal


def ideal_leq(E: EffectAlgebra, I: Ideal, J: Ideal,
              budget: Budget = DEFAULT_BUDGET) -> Optional[bool]:
    """I subset of J; None when undecidable within budget."""
    if isinstance(E, FiniteEffectAlgebra):
        return I.elements <= J.elements
    bad = lindsl.feasible(conj(_carrier_formula(E), I.predicate,
                               negate(J.predicate)), E.rank)
    if bad is None:
        return True
    if E.group.dense or E.group.in_group(bad):
        return False
    rng = random.Random(budget.seed)
    for v in sample_carrier(E, rng, budget.samples, budget.window):
        if I.contains(E, v) and not J.contains(E, v):
            return False
    return None


@dataclass(frozen=True)
class LargestStrict:
    ideal: Optional[Ideal]
    weak: bool  # True when only the zero ideal is strict
    chain_ok: Verdict


def largest_strict_ideal(E: EffectAlgebra, candidates=None,
                         budget: Budget = DEFAULT_BUDGET) -> LargestStrict:
    """The union of the strict nontrivial ideals, when any exist.

    With none, the zero ideal is returned flagged ``weak`` (it is always
    strict, but only in the weak reading that admits {0}). Symbolic
    hosts evaluate a caller-supplied candidate chain plus the canonical
    candidates.
    """
    if isinstance(E, FiniteEffectAlgebra):
        pool = [I for I in all_ideals(E)
                if I.elements != {E.zero} and len(I.elements) < E.n]
        strict = [I for I in pool if is_strict(E, I).holds]
        chain = _chain_verdict(E, strict, budget)
        if not strict:
            return LargestStrict(zero_ideal(E), True, chain)
        union = FiniteIdeal(frozenset().union(*(I.elements for I in strict)))
        if not is_strict(E, union).holds:
            chain = refuted("union of strict ideals is not strict")
        return LargestStrict(union, False, chain)
    pool = list(candidates or []) + canonical_ideals(E)
    strict = []
    for I in pool:
        nz, pr = nontrivial(E, I)
        if nz.holds and pr.holds and is_strict(E, I, budget).holds:
            strict.append(I)
    chain = _chain_verdict(E, strict, budget)
    if not strict:
        return LargestStrict(zero_ideal(E), True, chain)
    top = strict[0]
    for J in strict[1:]:
        rel = ideal_leq(E, top, J, budget)
        if rel is True:
            top = J
        elif rel is None:
            return LargestStrict(None, False,
                                 unknown("inclusion undecided"))
    return LargestStrict(top, False, chain)


def _chain_verdict(E: EffectAlgebra, ideals, budget: Budget) -> Verdict:
    for I, J in itertools.combinations(ideals, 2):
        le = ideal_leq(E, I, J, budget)
        ge = ideal_leq(E, J, I, budget)
        if le is False and ge is False:
            return refuted("incomparable strict ideals", witness=(I, J))
        if le is None or ge is None:
            return unknown("inclusion undecided")
    return proved("strict ideals form a chain")


# ---------------------------------------------------------------------------
# Locality and the radical on symbolic hosts


def is_maximal_fiber(E: IntervalEffectAlgebra, I: SymbolicIdeal,
                     budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Maximality of a canonical ideal, via simplicity of the quotient."""
    I = recognize(E, I)
    if I.split is None:
        return unknown("maximality implemented for fiber ideals only")
    head = E.head_interval(I.split)
    if head.group.rank == 1:
        return proved("quotient is a chain interval, which is simple")
    if head.enumerable:
        sub = is_simple(enumerate_algebra(head))
        return sub if sub.holds else refuted(
            "quotient has a nontrivial ideal", witness=sub.witness)
    sub = is_simple(head, budget)
    if sub.kind == "refuted":
        return refuted("quotient has a nontrivial ideal",
                       witness=sub.witness)
    if sub.holds:
        return Verdict(sub.kind, "quotient simple: " + sub.reason,
                       budget=sub.budget)
    return unknown("quotient simplicity undecided", budget=budget)


@dataclass(frozen=True)
class LocalReport:
    local: Verdict
    radical: Optional[Ideal]


def local_and_radical(E: EffectAlgebra,
                      budget: Budget = DEFAULT_BUDGET) -> LocalReport:
    """Locality plus the radical.

    Finite hosts enumerate maximal ideals. Symbolic hosts use the chain
    argument: a strict maximal ideal is the unique maximal ideal. Simple
    hosts are local with zero radical.
    """
    if isinstance(E, FiniteEffectAlgebra):
        maxima = maximal_ideals(E)
        rad = radical(E)
        if len(maxima) == 1:
            return LocalReport(proved("unique maximal ideal"), rad)
        return LocalReport(
            refuted(f"{len(maxima)} maximal ideals"), rad)
    for I in canonical_ideals(E):
        if I.split is None:
            continue
        maximal = is_maximal_fiber(E, I, budget)
        strict = is_strict(E, I, budget)
        if maximal.holds and strict.holds:
            kind = "proved" if maximal.kind == strict.kind == "proved" \
                else "witnessed"
            return LocalReport(
                Verdict(kind, "a strict maximal ideal forces a unique"
                              " maximal ideal"), I)
    simple = is_simple(E, budget)
    if simple.holds:
        return LocalReport(
            Verdict(simple.kind, "simple: the zero ideal is the unique"
                                 " maximal ideal", budget=simple.budget),
            zero_ideal(E))
    return LocalReport(unknown("no strict maximal candidate found",
                               budget=budget), None)
