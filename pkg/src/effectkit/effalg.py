"""Effect algebras in two carrier representations.

``FiniteEffectAlgebra`` stores a partial-addition table over indexed
elements. ``IntervalEffectAlgebra`` is the symbolic interval [0, u] of a
:class:`~effectkit.pogroup.ConePoGroup`; its partial sum a + b is the
group sum whenever a + b <= u. Every operation states which
representation it supports and whether a symbolic answer is exact or
budget-relative.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Union

from . import lindsl, pogroup
from .errors import (CarrierError, NotEnumerableError, RankMismatchError,
                     UndefinedSumError, UnsupportedOperationError)
from .pogroup import ConePoGroup, LexCone, ProductCone, cone_rank, lex_segments
from .vecs import Vec, rat_str
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)


# ---------------------------------------------------------------------------
# Finite tables


@dataclass(frozen=True)
class FiniteEffectAlgebra:
    """Partial-addition table with designated zero and one."""

    labels: tuple[str, ...]
    table: tuple[tuple[Optional[int], ...], ...]
    zero: int
    one: int
    coords: Optional[tuple[Vec, ...]] = None  # kept when built from an interval

    @property
    def n(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(self.n)

    def defined(self, i: int, j: int) -> bool:
        return self.table[i][j] is not None

    def add(self, i: int, j: int) -> int:
        k = self.table[i][j]
        if k is None:
            raise UndefinedSumError(
                f"{self.labels[i]} + {self.labels[j]} is undefined")
        return k

    @cached_property
    def order(self) -> tuple[tuple[bool, ...], ...]:
        """a <= b iff a + c = b for some c."""
        rows = []
        for a in self.elements():
            row = [False] * self.n
            for c in self.elements():
                k = self.table[a][c]
                if k is not None:
                    row[k] = True
            rows.append(tuple(row))
        return tuple(rows)

    def leq(self, a: int, b: int) -> bool:
        return self.order[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.order[a][b]

    @cached_property
    def complements(self) -> tuple[int, ...]:
        out = []
        for a in self.elements():
            mates = [b for b in self.elements() if self.table[a][b] == self.one]
            if len(mates) != 1:
                raise CarrierError(
                    f"element {self.labels[a]} has {len(mates)} complements")
            out.append(mates[0])
        return tuple(out)

    def complement(self, a: int) -> int:
        return self.complements[a]

    def minus(self, b: int, a: int) -> int:
        """The unique c with a + c = b; requires a <= b."""
        for c in self.elements():
            if self.table[a][c] == b:
                return c
        raise UndefinedSumError(
            f"{self.labels[b]} - {self.labels[a]}: elements not comparable")

    def meet(self, a: int, b: int) -> Optional[int]:
        lbs = [x for x in self.elements() if self.leq(x, a) and self.leq(x, b)]
        tops = [x for x in lbs if all(self.leq(y, x) for y in lbs)]
        return tops[0] if tops else None

    def join(self, a: int, b: int) -> Optional[int]:
        ubs = [x for x in self.elements() if self.leq(a, x) and self.leq(b, x)]
        bots = [x for x in ubs if all(self.leq(x, y) for y in ubs)]
        return bots[0] if bots else None

    def label_index(self, label: str) -> int:
        return self.labels.index(label)


def verify_axioms(E: FiniteEffectAlgebra) -> Verdict:
    """Exhaustive check of the four defining laws plus cancellativity.

    Reports the first violating tuple. Malformed tables (out-of-range
    entries) raise instead of returning a verdict.
    """
    n = E.n
    for i in range(n):
        for j in range(n):
            k = E.table[i][j]
            if k is not None and not (0 <= k < n):
                raise CarrierError(f"table entry {i}+{j} out of range")

    for a in range(n):
        for b in range(n):
            ab, ba = E.table[a][b], E.table[b][a]
            if (ab is None) != (ba is None) or ab != ba:
                return refuted("commutativity fails",
                               witness=(E.labels[a], E.labels[b]))

    for a in range(n):
        for b in range(n):
            for c in range(n):
                ab = E.table[a][b]
                lhs = E.table[ab][c] if ab is not None else None
                bc = E.table[b][c]
                rhs = E.table[a][bc] if bc is not None else None
                if (lhs is None) != (rhs is None) or lhs != rhs:
                    return refuted(
                        "associativity fails",
                        witness=(E.labels[a], E.labels[b], E.labels[c]))

    for a in range(n):
        mates = [b for b in range(n) if E.table[a][b] == E.one]
        if len(mates) != 1:
            return refuted(
                f"element has {len(mates)} complements", witness=E.labels[a])

    for a in range(n):
        if E.table[a][E.one] is not None and a != E.zero:
            return refuted("a + 1 defined for a != 0", witness=E.labels[a])

    for c in range(n):
        seen: dict[int, int] = {}
        for a in range(n):
            k = E.table[a][c]
            if k is None:
                continue
            if k in seen:
                return refuted(
                    "cancellativity fails",
                    witness=(E.labels[seen[k]], E.labels[a], E.labels[c]))
            seen[k] = a

    for a in range(n):
        for b in range(n):
            if E.table[a][b] == E.zero and (a != E.zero or b != E.zero):
                return refuted("positivity fails",
                               witness=(E.labels[a], E.labels[b]))

    return proved(f"axioms verified over all {n} elements")


# ---------------------------------------------------------------------------
# Interval carriers


@dataclass(frozen=True)
class IntervalEffectAlgebra:
    """The interval [0, u] of a unital po-group, kept symbolic.

    ``head_rank`` optionally declares a lexicographic boundary of the
    group's cone, splitting coordinates into a head (H, u_head) and a
    tail G; several representation-theoretic operations require it.
    """

    group: ConePoGroup
    unit: Vec
    head_rank: Optional[int] = None

    def __post_init__(self):
        if not self.group.in_group(self.unit):
            raise CarrierError("unit is not a group element")
        if not self.group.contains(self.unit):
            raise CarrierError("unit is not in the positive cone")
        if self.head_rank is not None:
            if self.head_rank not in self.lex_boundaries():
                raise CarrierError(
                    f"rank {self.head_rank} is not a lex boundary")
            if self.unit.head(self.head_rank).is_zero():
                raise CarrierError("unit vanishes on the declared head")

    @property
    def rank(self) -> int:
        return self.group.rank

    def lex_boundaries(self) -> tuple[int, ...]:
        segs = lex_segments(self.group.cone)
        cuts = []
        acc = 0
        for seg in segs[:-1]:
            acc += cone_rank(seg)
            cuts.append(acc)
        return tuple(cuts)

    def contains(self, v: Vec) -> bool:
        return (self.group.in_group(v) and self.group.contains(v)
                and self.group.contains(self.unit - v))

    def require(self, v: Vec) -> None:
        if not self.contains(v):
            raise CarrierError(f"{v} is outside [0, {self.unit}]")

    def defined(self, a: Vec, b: Vec) -> bool:
        return self.group.contains(self.unit - a - b)

    def add(self, a: Vec, b: Vec) -> Vec:
        if not self.defined(a, b):
            raise UndefinedSumError(f"{a} + {b} exceeds the unit")
        return a + b

    def leq(self, a: Vec, b: Vec) -> bool:
        return self.group.leq(a, b)

    def lt(self, a: Vec, b: Vec) -> bool:
        return self.group.lt(a, b)

    def complement(self, a: Vec) -> Vec:
        return self.unit - a

    def minus(self, b: Vec, a: Vec) -> Vec:
        if not self.leq(a, b):
            raise UndefinedSumError(f"{b} - {a}: elements not comparable")
        return b - a

    def zero_elem(self) -> Vec:
        return Vec.zero(self.rank)

    # -- lexicographic split ------------------------------------------------

    def split(self) -> int:
        if self.head_rank is None:
            raise UnsupportedOperationError(
                "operation needs a declared lexicographic split")
        return self.head_rank

    def head_group(self, r: Optional[int] = None) -> ConePoGroup:
        r = self.split() if r is None else r
        segs = lex_segments(self.group.cone)
        taken, acc = [], 0
        for seg in segs:
            if acc == r:
                break
            taken.append(seg)
            acc += cone_rank(seg)
        if acc != r:
            raise CarrierError(f"rank {r} is not a lex boundary")
        cone = pogroup.cone_from_segments(taken)
        return ConePoGroup(r, cone, unit=self.unit.head(r),
                           steps=self.group.steps[:r])

    def tail_group(self, r: Optional[int] = None) -> ConePoGroup:
        r = self.split() if r is None else r
        segs = lex_segments(self.group.cone)
        rest, acc = [], 0
        for seg in segs:
            if acc >= r:
                rest.append(seg)
            acc += cone_rank(seg)
        cone = pogroup.cone_from_segments(rest)
        return ConePoGroup(self.rank - r, cone, steps=self.group.steps[r:])

    def head_interval(self, r: Optional[int] = None) -> "IntervalEffectAlgebra":
        H = self.head_group(r)
        return IntervalEffectAlgebra(H, H.unit)

    def unit_tail(self, r: Optional[int] = None) -> Vec:
        r = self.split() if r is None else r
        return self.unit.tail(r)

    # -- enumeration --------------------------------------------------------

    @property
    def enumerable(self) -> bool:
        """Conservative: only product-order boxes over a lattice."""
        return (isinstance(self.group.cone, ProductCone)
                and self.group.lattice)

    def carrier_size(self) -> int:
        if not self.enumerable:
            raise NotEnumerableError("carrier is not a finite integer box")
        size = 1
        for u, s in zip(self.unit.coords, self.group.steps):
            size *= int(u / s) + 1
        return size

    def carrier_elements(self) -> Iterator[Vec]:
        if not self.enumerable:
            raise NotEnumerableError("carrier is not a finite integer box")
        axes = [[s * i for i in range(int(u / s) + 1)]
                for u, s in zip(self.unit.coords, self.group.steps)]
        for combo in itertools.product(*axes):
            yield Vec(tuple(combo))


def interval_algebra(G: ConePoGroup, unit: Optional[Vec] = None,
                     head_rank: Optional[int] = None) -> IntervalEffectAlgebra:
    """The interval [0, u] of (G, u) as an effect algebra."""
    if unit is None:
        unit = G.unit
    if unit is None:
        raise CarrierError("an interval algebra needs a unit")
    return IntervalEffectAlgebra(G.with_unit(unit), unit, head_rank)


def _vec_label(v: Vec) -> str:
    parts = []
    for c in v.coords:
        parts.append(str(c.numerator) if c.denominator == 1 else rat_str(c))
    return ",".join(parts)


def enumerate_algebra(E: IntervalEffectAlgebra,
                      limit: int = 10000) -> FiniteEffectAlgebra:
    """Materialize a finite table isomorphic to an enumerable interval."""
    if not E.enumerable:
        raise NotEnumerableError(
            "infinite carrier: only product-order lattice boxes enumerate")
    if E.carrier_size() > limit:
        raise NotEnumerableError(f"carrier larger than limit {limit}")
    elems = list(E.carrier_elements())
    index = {v: i for i, v in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            row.append(index[a + b] if E.defined(a, b) else None)
        table.append(tuple(row))
    return FiniteEffectAlgebra(
        labels=tuple(_vec_label(v) for v in elems),
        table=tuple(table),
        zero=index[E.zero_elem()],
        one=index[E.unit],
        coords=tuple(elems))


EffectAlgebra = Union[FiniteEffectAlgebra, IntervalEffectAlgebra]


# ---------------------------------------------------------------------------
# Sampling carriers


def sample_carrier(E: IntervalEffectAlgebra, rng: random.Random, count: int,
                   window: int) -> list[Vec]:
    """Seeded carrier elements; lex hosts get per-fiber coverage."""
    out = [E.zero_elem(), E.unit]
    if E.head_rank is not None:
        head_box = list(E.head_interval().carrier_elements()) \
            if E.head_interval().enumerable else None
        r = E.head_rank
        tail = E.tail_group()
        for _ in range(count):
            if head_box is not None:
                t = rng.choice(head_box)
            else:
                t = _positify(E.head_group(),
                              pogroup.sample_vectors(
                                  E.head_group(), rng, 1, window)[0])
            g = pogroup.sample_vectors(tail, rng, 1, window)[0]
            v = t.concat(g)
            v = _clamp_to_carrier(E, v, r)
            if v is not None:
                out.append(v)
        return out
    for v in pogroup.sample_vectors(E.group, rng, count * 3, window):
        w = _positify(E.group, v)
        if E.contains(w):
            out.append(w)
        elif E.contains(E.unit - w):
            out.append(E.unit - w)
        if len(out) >= count + 2:
            break
    return out


def _positify(G: ConePoGroup, v: Vec) -> Vec:
    if G.contains(v):
        return v
    if G.contains(-v):
        return -v
    w = Vec(tuple(abs(c) for c in v.coords))
    if G.contains(w):
        return w
    return Vec.zero(G.rank)


def _clamp_to_carrier(E: IntervalEffectAlgebra, v: Vec,
                      r: int) -> Optional[Vec]:
    if E.contains(v):
        return v
    t, g = v.head(r), v.tail(r)
    tail = E.tail_group()
    if t.is_zero():
        w = t.concat(_positify(tail, g))
        return w if E.contains(w) else None
    if t == E.unit.head(r):
        w = t.concat(E.unit_tail() - _positify(tail, g))
        return w if E.contains(w) else None
    return None


def carrier_window(E: IntervalEffectAlgebra, window: int,
                   dense_denoms: tuple[int, ...] = (1, 2, 3),
                   limit: int = 4000) -> list[Vec]:
    """Deterministic carrier elements with coordinates within the window."""
    out = []
    for v in pogroup.lattice_points(E.group, window, dense_denoms):
        if E.contains(v):
            out.append(v)
            if len(out) >= limit:
                break
    return out


# ---------------------------------------------------------------------------
# Riesz decomposition


def check_rdp(E: EffectAlgebra, budget: Budget = DEFAULT_BUDGET,
              quad_cap: int = 400) -> Verdict:
    """Riesz decomposition property of the partial addition.

    Finite tables are checked exhaustively (the counterexample is the
    unrefinable quadruple). Interval carriers check within a window, with
    the structural shortcuts of the underlying cone.
    """
    if isinstance(E, FiniteEffectAlgebra):
        return _rdp_finite(E)
    structural = pogroup.check_rdp_cone(E.group, budget, quad_cap=0)
    if structural.kind == "proved":
        return structural
    pts = carrier_window(E, budget.window)
    rng = random.Random(budget.seed)
    quads = pogroup._rdp_quadruples(pts, quad_cap, rng)
    checked = 0
    for a1, a2, b1 in quads:
        b2 = a1 + a2 - b1
        if not E.defined(a1, a2):
            continue
        checked += 1
        found, sound = pogroup._refine(E.group, a1, a2, b1, b2, budget)
        if not found:
            if sound:
                return refuted("unrefinable quadruple",
                               witness=(a1, a2, b1, b2), budget=budget)
            return unknown("no refinement within the enlarged window",
                           budget=budget)
    return witnessed(f"{checked} quadruples refined within the window",
                     budget=budget)


def _rdp_finite(E: FiniteEffectAlgebra) -> Verdict:
    n = E.n
    sums: dict[int, list[tuple[int, int]]] = {}
    for a in range(n):
        for b in range(n):
            k = E.table[a][b]
            if k is not None:
                sums.setdefault(k, []).append((a, b))
    for total, pairs in sums.items():
        for a1, a2 in pairs:
            for b1, b2 in pairs:
                if not _refine_finite(E, a1, a2, b1, b2):
                    return refuted(
                        "unrefinable quadruple",
                        witness=tuple(E.labels[i] for i in (a1, a2, b1, b2)))
    return proved("all quadruples refine")


def _refine_finite(E: FiniteEffectAlgebra, a1: int, a2: int, b1: int,
                   b2: int) -> bool:
    for c11 in E.elements():
        if not (E.leq(c11, a1) and E.leq(c11, b1)):
            continue
        c12 = E.minus(a1, c11)
        c21 = E.minus(b1, c11)
        if not E.leq(c21, a2):
            continue
        c22 = E.minus(a2, c21)
        if E.table[c12][c22] == b2:
            return True
    return False


# ---------------------------------------------------------------------------
# Order classification


@dataclass(frozen=True)
class OrderClassification:
    lattice: Verdict
    antilattice: Verdict
    linear: Verdict
    mv: Verdict
    mv_table: Optional[tuple[tuple[int, ...], ...]] = None


def classify_order(E: EffectAlgebra,
                   budget: Budget = DEFAULT_BUDGET) -> OrderClassification:
    """Lattice / antilattice / linear / MV classification.

    Finite: exhaustive scans; the MV flag (lattice and RDP) comes with a
    total truncated-addition table a (+) b = a + (complement(a) meet b).
    Interval: structural where the cone decides, sampled otherwise.
    """
    if isinstance(E, FiniteEffectAlgebra):
        return _classify_finite(E)
    return _classify_interval(E, budget)


def _classify_finite(E: FiniteEffectAlgebra) -> OrderClassification:
    lattice_w = None
    anti_w = None
    linear_w = None
    for a in E.elements():
        for b in E.elements():
            m, j = E.meet(a, b), E.join(a, b)
            comparable = E.leq(a, b) or E.leq(b, a)
            if (m is None or j is None) and lattice_w is None:
                lattice_w = (E.labels[a], E.labels[b])
            if (m is not None or j is not None) and not comparable \
                    and anti_w is None:
                anti_w = (E.labels[a], E.labels[b])
            if not comparable and linear_w is None:
                linear_w = (E.labels[a], E.labels[b])
    lattice = proved("all pairs have meets and joins") if lattice_w is None \
        else refuted("pair without meet or join", witness=lattice_w)
    anti = proved("bounds exist only for comparable pairs") if anti_w is None \
        else refuted("incomparable pair with a bound", witness=anti_w)
    linear = proved("order is total") if linear_w is None \
        else refuted("incomparable pair", witness=linear_w)
    rdp = _rdp_finite(E)
    if lattice.holds and rdp.holds:
        mv = proved("lattice ordered with RDP")
        table = _mv_table(E)
    else:
        mv = refuted("needs lattice order and RDP")
        table = None
    return OrderClassification(lattice, anti, linear, mv, table)


def _mv_table(E: FiniteEffectAlgebra) -> tuple[tuple[int, ...], ...]:
    rows = []
    for a in E.elements():
        row = []
        for b in E.elements():
            cap = E.meet(E.complement(a), b)
            row.append(E.add(a, cap))
        rows.append(tuple(row))
    return tuple(rows)


def _classify_interval(E: IntervalEffectAlgebra,
                       budget: Budget) -> OrderClassification:
    linear = pogroup.is_linear_cone(E.group.cone)
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples // 2, budget.window)
    if linear.kind == "unknown":
        linear = _sampled_linear(E, pool, budget)
    if isinstance(E.group.cone, ProductCone):
        # Componentwise minima and maxima are exact bounds inside the box.
        lattice = proved("componentwise bounds stay in the carrier")
        if linear.holds:
            anti: Verdict = proved("total order")
        else:
            anti = refuted("incomparable pair with componentwise meet",
                           witness=linear.witness)
    elif linear.holds:
        lattice = proved("total order")
        anti = proved("total order")
    else:
        lattice, anti = _sampled_lattice(E, pool, budget)
    rdp = check_rdp(E, budget.scaled(budget.samples // 2))
    if lattice.holds and rdp.holds:
        kind = "proved" if lattice.kind == rdp.kind == "proved" else "witnessed"
        mv = Verdict(kind, "lattice ordered with RDP; truncation is"
                           " (a + b) clipped to the unit",
                     budget=None if kind == "proved" else budget)
    elif not lattice.holds and lattice.decided:
        mv = refuted("not a lattice", witness=lattice.witness,
                     budget=lattice.budget)
    elif not rdp.holds and rdp.decided:
        mv = refuted("RDP fails", witness=rdp.witness, budget=rdp.budget)
    else:
        mv = unknown("lattice or RDP undecided", budget=budget)
    return OrderClassification(lattice, anti, linear, mv, None)


def _sampled_linear(E: IntervalEffectAlgebra, pool: list[Vec],
                    budget: Budget) -> Verdict:
    for a, b in itertools.combinations(pool, 2):
        if not E.leq(a, b) and not E.leq(b, a):
            return refuted("incomparable carrier pair", witness=(a, b))
    return witnessed("sampled pairs all comparable", budget=budget)


def _sampled_lattice(E: IntervalEffectAlgebra, pool: list[Vec],
                     budget: Budget) -> tuple[Verdict, Verdict]:
    """Sample-relative lattice and antilattice verdicts.

    A sampled meet of (a, b) is a sampled lower bound dominating every
    other sampled lower bound; similarly for joins. Bounds found for
    incomparable pairs refute the antilattice claim; pairs whose sampled
    lower bounds are pairwise undominated refute the lattice claim.
    """
    lattice_witness = None
    anti_witness = None
    seen_pairs = 0
    for a, b in itertools.combinations(pool, 2):
        if seen_pairs >= budget.samples:
            break
        if E.leq(a, b) or E.leq(b, a):
            continue
        seen_pairs += 1
        lbs = _bounds(E, a, b, pool, lower=True)
        ubs = _bounds(E, a, b, pool, lower=False)
        meet = next((z for z in lbs
                     if all(E.leq(w, z) for w in lbs)
                     and _survives_refinement(E, a, b, z, lower=True)), None)
        join = next((z for z in ubs
                     if all(E.leq(z, w) for w in ubs)
                     and _survives_refinement(E, a, b, z, lower=False)), None)
        if (meet is not None or join is not None) and anti_witness is None:
            anti_witness = (a, b, meet if meet is not None else join)
        if meet is None and len(lbs) >= 2 and lattice_witness is None:
            lattice_witness = (a, b)
    if anti_witness is None:
        anti = witnessed("no sampled bound for incomparable pairs",
                         budget=budget)
    else:
        anti = refuted("incomparable pair with a sampled bound",
                       witness=anti_witness, budget=budget)
    if lattice_witness is None:
        lattice = witnessed("sampled bounds always dominated", budget=budget)
    else:
        lattice = refuted(
            "pair whose sampled lower bounds have no sampled maximum",
            witness=lattice_witness, budget=budget)
    return lattice, anti


def _survives_refinement(E: IntervalEffectAlgebra, a: Vec, b: Vec, z: Vec,
                         lower: bool) -> bool:
    """A candidate meet/join must dominate constructed bounds near the
    componentwise corner, not just the sampled ones."""
    corner = Vec(tuple((min if lower else max)(x, y)
                       for x, y in zip(a.coords, b.coords)))
    refiners = [
        Vec(tuple((zc + cc) / 2 for zc, cc in zip(z.coords, corner.coords))),
        Vec(tuple(zc + (cc - zc) / 4
                  for zc, cc in zip(z.coords, corner.coords))),
    ]
    for w in refiners:
        if not (E.group.in_group(w) and E.contains(w)):
            continue
        if lower:
            if E.leq(w, a) and E.leq(w, b) and not E.leq(w, z):
                return False
        else:
            if E.leq(a, w) and E.leq(b, w) and not E.leq(z, w):
                return False
    return True


def _bounds(E: IntervalEffectAlgebra, a: Vec, b: Vec, pool: list[Vec],
            lower: bool) -> list[Vec]:
    cand = list(pool)
    mid = Vec(tuple((x + y) / 2 for x, y in zip(a.coords, b.coords)))
    cmin = Vec(tuple(min(x, y) for x, y in zip(a.coords, b.coords)))
    cmax = Vec(tuple(max(x, y) for x, y in zip(a.coords, b.coords)))
    for extra in (mid, cmin, cmax):
        if E.group.in_group(extra) and E.contains(extra):
            cand.append(extra)
    if lower:
        return [z for z in cand if E.leq(z, a) and E.leq(z, b)]
    return [z for z in cand if E.leq(a, z) and E.leq(b, z)]


# ---------------------------------------------------------------------------
# Infinitesimals


def multiples_defined(E: FiniteEffectAlgebra, a: int) -> int:
    """Largest n with n*a defined (capped at n + 1 for the zero element)."""
    if a == E.zero:
        return E.n + 1
    count = 1
    cur = a
    while count <= E.n and E.table[cur][a] is not None:
        cur = E.table[cur][a]
        count += 1
    return count


def infinitesimals(E: EffectAlgebra):
    """The set of elements a with n*a defined for every n.

    Finite: computed by iteration (strictly increasing multiples must hit
    an undefined sum). Interval: requires a declared split whose head
    interval is Archimedean; the set is then the zero fiber, returned as
    a predicate over coordinates.
    """
    if isinstance(E, FiniteEffectAlgebra):
        return frozenset(a for a in E.elements()
                         if multiples_defined(E, a) > E.n)
    r = E.split()
    head = E.head_group()
    if not isinstance(head.cone, ProductCone):
        raise UnsupportedOperationError(
            "head interval is not Archimedean at this split; the zero-fiber"
            " criterion does not apply")
    head_zero = lindsl.shift_vars(lindsl.zero_vec_formula(r), 0, E.rank)
    tail_pos = lindsl.shift_vars(pogroup.cone_formula(E.tail_group().cone),
                                 r, E.rank)
    return lindsl.conj(head_zero, tail_pos)


def is_archimedean(E: EffectAlgebra,
                   budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Whether the only infinitesimal is 0."""
    if isinstance(E, FiniteEffectAlgebra):
        inf = infinitesimals(E)
        if inf == {E.zero}:
            return proved("finite carriers admit no nonzero infinitesimal")
        return refuted("nonzero infinitesimal",
                       witness=[E.labels[i] for i in sorted(inf - {E.zero})])
    if E.head_rank is not None and E.rank > E.head_rank:
        g = pogroup.strictly_positive_element(E.tail_group().cone)
        if g is not None:
            witness = Vec.zero(E.head_rank).concat(g)
            if E.contains(witness):
                return refuted("nonzero infinitesimal in the zero fiber",
                               witness=witness)
    if isinstance(E.group.cone, ProductCone):
        return proved("product order: n*a <= u forces a = 0")
    rng = random.Random(budget.seed)
    for a in sample_carrier(E, rng, budget.samples, budget.window):
        if a.is_zero():
            continue
        if all(E.group.contains(E.unit - a.scale(n))
               for n in range(1, budget.window + 8)):
            return refuted("sampled element with many defined multiples",
                           witness=a, budget=budget)
    return witnessed("no sampled infinitesimal", budget=budget)
