"""Rational-vector Abelian po-groups with configurable positive cones.

A group is Q^rank (or a sublattice of it given by per-coordinate step
sizes; step 0 marks a dense coordinate). The order is determined by a
cone specification:

* ``ProductCone(rank)``     -- componentwise order;
* ``LexCone(left, right)``  -- (g1, g2) >= 0 iff g1 is strictly positive
  on the left, or g1 = 0 and g2 is in the right cone;
* ``CustomCone(rank, f)``   -- membership given by a linear-inequality
  predicate from :mod:`effectkit.lindsl`.

Lex cones are kept right-nested; lexicographic composition of orders is
associative, so this is only a normal form, not a restriction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from . import lindsl
from .errors import CarrierError, RankMismatchError
from .lindsl import Atom, Formula, conj, disj
from .vecs import Vec, rat
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)


@dataclass(frozen=True)
class ProductCone:
    rank: int


@dataclass(frozen=True)
class LexCone:
    left: "ConeSpec"
    right: "ConeSpec"


@dataclass(frozen=True)
class CustomCone:
    rank: int
    predicate: Formula


ConeSpec = Union[ProductCone, LexCone, CustomCone]


def cone_rank(cone: ConeSpec) -> int:
    if isinstance(cone, LexCone):
        return cone_rank(cone.left) + cone_rank(cone.right)
    return cone.rank


def normalize_cone(cone: ConeSpec) -> ConeSpec:
    """Right-nest lex pairs; drop rank-0 factors."""
    if not isinstance(cone, LexCone):
        return cone
    left = normalize_cone(cone.left)
    right = normalize_cone(cone.right)
    if cone_rank(left) == 0:
        return right
    if cone_rank(right) == 0:
        return left
    if isinstance(left, LexCone):
        return normalize_cone(LexCone(left.left, LexCone(left.right, right)))
    return LexCone(left, right)


def lex_segments(cone: ConeSpec) -> list[ConeSpec]:
    """Top-level factors of the (right-nested) lex chain."""
    cone = normalize_cone(cone)
    segs = []
    while isinstance(cone, LexCone):
        segs.append(cone.left)
        cone = cone.right
    segs.append(cone)
    return segs


def cone_from_segments(segs: list[ConeSpec]) -> ConeSpec:
    if not segs:
        return ProductCone(0)
    cone = segs[-1]
    for seg in reversed(segs[:-1]):
        cone = LexCone(seg, cone)
    return cone


def cone_contains(cone: ConeSpec, v: Vec) -> bool:
    if v.rank != cone_rank(cone):
        raise RankMismatchError(
            f"vector rank {v.rank}, cone rank {cone_rank(cone)}")
    if isinstance(cone, ProductCone):
        return all(c >= 0 for c in v.coords)
    if isinstance(cone, CustomCone):
        return lindsl.holds(cone.predicate, v)
    r = cone_rank(cone.left)
    head, tail = v.head(r), v.tail(r)
    if cone_contains(cone.left, head):
        if not head.is_zero():
            return True
        return cone_contains(cone.right, tail)
    return False


def cone_formula(cone: ConeSpec) -> Formula:
    """The cone's membership predicate in the inequality language."""
    if isinstance(cone, ProductCone):
        return lindsl.And(tuple(
            Atom(_unit(cone.rank, i), lindsl.GE) for i in range(cone.rank)))
    if isinstance(cone, CustomCone):
        return cone.predicate
    rank = cone_rank(cone)
    r = cone_rank(cone.left)
    left_f = lindsl.shift_vars(cone_formula(cone.left), 0, rank)
    left_nz = lindsl.shift_vars(lindsl.nonzero_formula(r), 0, rank)
    left_zero = lindsl.shift_vars(lindsl.zero_vec_formula(r), 0, rank)
    right_f = lindsl.shift_vars(cone_formula(cone.right), r, rank)
    return disj(conj(left_f, left_nz), conj(left_zero, right_f))


def _unit(rank: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1 if j == i else 0) for j in range(rank))


def is_linear_cone(cone: ConeSpec) -> Verdict:
    """Whether the cone orders the whole group totally."""
    if isinstance(cone, ProductCone):
        if cone.rank <= 1:
            return proved("product cone of rank <= 1")
        return refuted("incomparable unit vectors",
                       witness=(Vec.of(*_unit(cone.rank, 0)),
                                Vec.of(*_unit(cone.rank, 1))))
    if isinstance(cone, LexCone):
        left = is_linear_cone(cone.left)
        right = is_linear_cone(cone.right)
        if left.holds and right.holds:
            return proved("lex pair of linear cones")
        lr = cone_rank(cone.left)
        rr = cone_rank(cone.right)
        if left.kind == "refuted":
            a, b = left.witness
            pad = Vec.zero(rr)
            return refuted("lex head not linear",
                           witness=(a.concat(pad), b.concat(pad)))
        if right.kind == "refuted":
            a, b = right.witness
            pad = Vec.zero(lr)
            return refuted("lex tail not linear",
                           witness=(pad.concat(a), pad.concat(b)))
        return unknown("component linearity undecided")
    return unknown("custom cone; use sampled checks")


@dataclass(frozen=True)
class ConePoGroup:
    """A po-group on Q^rank (or a sublattice) with a designated cone."""

    rank: int
    cone: ConeSpec
    unit: Optional[Vec] = None
    steps: tuple[Fraction, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        cone = normalize_cone(self.cone)
        object.__setattr__(self, "cone", cone)
        if cone_rank(cone) != self.rank:
            raise RankMismatchError(
                f"cone rank {cone_rank(cone)} != group rank {self.rank}")
        if self.steps is None:
            object.__setattr__(self, "steps", (Fraction(1),) * self.rank)
        elif len(self.steps) != self.rank:
            raise RankMismatchError("steps length != rank")
        if self.unit is not None:
            if self.unit.rank != self.rank:
                raise RankMismatchError("unit rank mismatch")
            if not self.in_group(self.unit):
                raise CarrierError(f"unit {self.unit} not in the lattice")
            if not self.contains(self.unit) or self.unit.is_zero():
                raise CarrierError(
                    f"unit {self.unit} must be a nonzero cone element")

    # -- membership -------------------------------------------------------

    def contains(self, v: Vec) -> bool:
        return cone_contains(self.cone, v)

    def in_group(self, v: Vec) -> bool:
        if v.rank != self.rank:
            raise RankMismatchError(f"rank {v.rank} != {self.rank}")
        for c, s in zip(v.coords, self.steps):
            if s == 0:
                continue
            if (c / s).denominator != 1:
                return False
        return True

    @property
    def dense(self) -> bool:
        return all(s == 0 for s in self.steps)

    @property
    def lattice(self) -> bool:
        return all(s != 0 for s in self.steps)

    # -- order ------------------------------------------------------------

    def leq(self, a: Vec, b: Vec) -> bool:
        return self.contains(b - a)

    def lt(self, a: Vec, b: Vec) -> bool:
        return a != b and self.leq(a, b)

    def zero(self) -> Vec:
        return Vec.zero(self.rank)

    def formula(self) -> Formula:
        return cone_formula(self.cone)

    def with_unit(self, unit: Vec) -> "ConePoGroup":
        return ConePoGroup(self.rank, self.cone, unit, self.steps)


def lex_product(head: ConePoGroup, tail: ConePoGroup) -> ConePoGroup:
    """The lexicographic product with unit ``(u, 0)``.

    The head must carry a strong unit u; the result is again unital.
    """
    if head.unit is None:
        raise CarrierError("lexicographic head needs a unit")
    cone = LexCone(head.cone, tail.cone)
    unit = head.unit.concat(Vec.zero(tail.rank))
    return ConePoGroup(head.rank + tail.rank, cone, unit,
                       head.steps + tail.steps)


# ---------------------------------------------------------------------------
# Point generation for windowed and sampled checks


def lattice_points(G: ConePoGroup, window: int,
                   dense_denoms: tuple[int, ...] = (1, 2)) -> Iterator[Vec]:
    """Deterministic grid of group elements with coordinates in [-w, w].

    Lattice coordinates walk in their step size; dense coordinates walk a
    grid with the given denominators.
    """
    axes = []
    for s in G.steps:
        if s != 0:
            k = int(window / s) if s <= window else 0
            axes.append([s * i for i in range(-k, k + 1)])
        else:
            vals = sorted({Fraction(p, q)
                           for q in dense_denoms
                           for p in range(-window * q, window * q + 1)})
            axes.append(vals)
    for combo in itertools.product(*axes):
        yield Vec(tuple(combo))


def cone_window(G: ConePoGroup, window: int,
                dense_denoms: tuple[int, ...] = (1, 2),
                limit: int = 20000) -> list[Vec]:
    out = []
    for v in lattice_points(G, window, dense_denoms):
        if G.contains(v):
            out.append(v)
            if len(out) >= limit:
                break
    return out


def sample_vectors(G: ConePoGroup, rng: random.Random, count: int,
                   window: int) -> list[Vec]:
    """Random group elements with coordinates within the window."""
    out = []
    for _ in range(count):
        coords = []
        for s in G.steps:
            if s != 0:
                k = int(window / s) if s <= window else 0
                coords.append(s * rng.randint(-k, k))
            else:
                q = rng.randint(1, 4)
                coords.append(Fraction(rng.randint(-window * q, window * q), q))
        out.append(Vec(tuple(coords)))
    return out


# ---------------------------------------------------------------------------
# Verdict-typed structural checks


def check_cone_axioms(G: ConePoGroup,
                      budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """0 in C, C + C subset of C, and C pointed.

    Product and lex cones hold structurally. Custom cones over dense
    coordinates are decided exactly through the inequality language;
    lattice customs get a window-and-samples check.
    """
    cone = G.cone
    if _structural(cone):
        return proved("product/lex cone axioms hold structurally")
    f = G.formula()
    if not lindsl.holds(f, G.zero()):
        return refuted("0 not in cone", witness=G.zero())
    if G.dense:
        bad = lindsl.feasible(
            conj(f, lindsl.substitute(f, _neg_matrix(G.rank),
                                      _zero_shift(G.rank)),
                 lindsl.nonzero_formula(G.rank)), G.rank)
        if bad is not None:
            return refuted("cone not pointed", witness=bad)
        two = 2 * G.rank
        fx = lindsl.shift_vars(f, 0, two)
        fy = lindsl.shift_vars(f, G.rank, two)
        fsum = lindsl.substitute(lindsl.negate(f), _sum_matrix(G.rank),
                                 _zero_shift(G.rank))
        bad = lindsl.feasible(conj(fx, fy, fsum), two)
        if bad is not None:
            x, y = bad.head(G.rank), bad.tail(G.rank)
            return refuted("cone not closed under addition", witness=(x, y))
        return proved("custom cone axioms decided exactly over Q^rank")
    pts = cone_window(G, budget.window)
    rng = random.Random(budget.seed)
    pts += [v for v in sample_vectors(G, rng, budget.samples, budget.window)
            if G.contains(v)]
    for v in pts:
        if not v.is_zero() and G.contains(-v):
            return refuted("cone not pointed", witness=v, budget=budget)
    for x in pts[:80]:
        for y in pts[:80]:
            if not G.contains(x + y):
                return refuted("cone not closed under addition",
                               witness=(x, y), budget=budget)
    return witnessed("cone axioms hold on window and samples", budget=budget)


def _structural(cone: ConeSpec) -> bool:
    if isinstance(cone, ProductCone):
        return True
    if isinstance(cone, LexCone):
        return _structural(cone.left) and _structural(cone.right)
    return False


def _neg_matrix(rank: int) -> list[list[Fraction]]:
    return [[Fraction(-1 if i == j else 0) for j in range(rank)]
            for i in range(rank)]


def _sum_matrix(rank: int) -> list[list[Fraction]]:
    # x_i substituted by y_i + y_{rank+i} over 2*rank variables.
    out = []
    for i in range(rank):
        row = [Fraction(0)] * (2 * rank)
        row[i] = Fraction(1)
        row[rank + i] = Fraction(1)
        out.append(row)
    return out


def _zero_shift(rank: int) -> list[Fraction]:
    return [Fraction(0)] * rank


def check_strong_unit(G: ConePoGroup,
                      budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Every g admits g <= n*u for some n >= 0."""
    if G.unit is None:
        return refuted("group has no unit")
    v = _strong_unit_structural(G.cone, G.unit)
    if v is not None:
        return v
    rng = random.Random(budget.seed)
    for g in sample_vectors(G, rng, budget.samples, budget.window):
        if not _dominated(G, g, budget.window + 8):
            return unknown(
                f"no n <= {budget.window + 8} with {g} <= n*unit; "
                "strong unit unverified", budget=budget)
    return witnessed("sampled elements dominated by multiples of the unit",
                     budget=budget)


def _strong_unit_structural(cone: ConeSpec, unit: Vec) -> Optional[Verdict]:
    if isinstance(cone, ProductCone):
        if all(c > 0 for c in unit.coords) or cone.rank == 0:
            return proved("product cone with strictly positive unit")
        return refuted("unit has a zero coordinate under product order",
                       witness=unit)
    if isinstance(cone, LexCone):
        r = cone_rank(cone.left)
        head = unit.head(r)
        if head.is_zero():
            return refuted("unit vanishes on the lex head", witness=unit)
        sub = _strong_unit_structural(cone.left, head)
        if sub is not None and sub.holds:
            return proved("lex pair with strong head unit")
        return sub
    return None


def _dominated(G: ConePoGroup, g: Vec, nmax: int) -> bool:
    u = G.unit
    for n in range(nmax + 1):
        if G.contains(u.scale(n) - g):
            return True
    return False


def strictly_positive_element(cone: ConeSpec) -> Optional[Vec]:
    """A cone element that is strictly above 0, when one is obvious."""
    if isinstance(cone, ProductCone):
        if cone.rank == 0:
            return None
        return Vec((Fraction(1),) * cone.rank)
    if isinstance(cone, LexCone):
        left = strictly_positive_element(cone.left)
        if left is not None:
            return left.concat(Vec.zero(cone_rank(cone.right)))
        return None
    return None


def is_directed(G: ConePoGroup, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Upward (equivalently downward) directedness of the group order."""
    if isinstance(G.cone, ProductCone):
        return proved("componentwise maxima are common upper bounds")
    if isinstance(G.cone, LexCone):
        left = ConePoGroup(cone_rank(G.cone.left), G.cone.left,
                           steps=G.steps[:cone_rank(G.cone.left)])
        if is_directed(left, budget).kind == "proved" and \
                strictly_positive_element(G.cone.left) is not None:
            return proved("lex pair with directed head owning a strictly"
                          " positive element")
    rng = random.Random(budget.seed)
    pairs = list(zip(sample_vectors(G, rng, budget.samples, budget.window),
                     sample_vectors(G, rng, budget.samples, budget.window)))
    window_pts = list(lattice_points(G, budget.window + 1))
    for x, y in pairs:
        z = _common_upper_bound(G, x, y, window_pts)
        if z is None:
            exhaustive = all(
                not (G.contains(w - x) and G.contains(w - y))
                for w in window_pts)
            if exhaustive:
                return refuted(
                    "pair with no common upper bound in the window",
                    witness=(x, y), budget=budget)
            return unknown("no upper bound found within budget",
                           budget=budget)
    return witnessed("every sampled pair had a common upper bound",
                     budget=budget)


def _common_upper_bound(G: ConePoGroup, x: Vec, y: Vec,
                        window_pts: list[Vec]) -> Optional[Vec]:
    cmax = Vec(tuple(max(a, b) for a, b in zip(x.coords, y.coords)))
    ones = Vec((Fraction(1),) * G.rank)
    for k in range(0, 4):
        z = cmax + ones.scale(k)
        if G.in_group(z) and G.contains(z - x) and G.contains(z - y):
            return z
    for z in window_pts:
        if G.contains(z - x) and G.contains(z - y):
            return z
    return None


def check_rdp_cone(G: ConePoGroup, budget: Budget = DEFAULT_BUDGET,
                   quad_cap: int = 300) -> Verdict:
    """Riesz decomposition on the positive cone.

    Structural shortcuts: product cones refine by componentwise minima;
    a lex pair refines when its head is linear and its tail has RDP, or
    when both factors have RDP and the tail is directed. Otherwise
    quadruples a1+a2 = b1+b2 within the window are refined by searching
    c11 (which determines the rest of the matrix), exactly over dense
    coordinates and over an enlarged window on lattices.
    """
    structural = _rdp_structural(G, budget)
    if structural is not None:
        return structural
    pts = cone_window(G, budget.window)
    rng = random.Random(budget.seed)
    quads = _rdp_quadruples(pts, quad_cap, rng)
    for a1, a2, b1 in quads:
        b2 = a1 + a2 - b1
        found, sound = _refine(G, a1, a2, b1, b2, budget)
        if not found:
            if sound:
                return refuted("unrefinable quadruple",
                               witness=(a1, a2, b1, b2), budget=budget)
            return unknown("no refinement within the enlarged window",
                           budget=budget)
    return witnessed(f"{len(quads)} quadruples refined within the window",
                     budget=budget)


def _rdp_structural(G: ConePoGroup, budget: Budget) -> Optional[Verdict]:
    cone = G.cone
    if isinstance(cone, ProductCone):
        return proved("componentwise minima refine product quadruples")
    if isinstance(cone, LexCone):
        r = cone_rank(cone.left)
        left = ConePoGroup(r, cone.left, steps=G.steps[:r])
        right = ConePoGroup(G.rank - r, cone.right, steps=G.steps[r:])
        right_rdp = check_rdp_cone(right, budget)
        if right_rdp.kind != "proved":
            return None
        if is_linear_cone(cone.left).holds:
            return proved("lex pair: linear head over an RDP tail")
        left_rdp = check_rdp_cone(left, budget)
        if left_rdp.kind == "proved" and is_directed(right, budget).kind == "proved":
            return proved("lex pair: RDP factors with directed tail")
    return None


def _rdp_quadruples(pts: list[Vec], cap: int, rng: random.Random):
    by_sum: dict[tuple, list[tuple[Vec, Vec]]] = {}
    for a in pts:
        for b in pts:
            by_sum.setdefault((a + b).coords, []).append((a, b))
    quads = []
    for key in sorted(by_sum, key=str):
        group = by_sum[key]
        for (a1, a2) in group:
            for (b1, _b2) in group:
                quads.append((a1, a2, b1))
    if len(quads) > cap:
        idx = sorted(rng.sample(range(len(quads)), cap))
        quads = [quads[i] for i in idx]
    return quads


def _refine(G: ConePoGroup, a1: Vec, a2: Vec, b1: Vec, b2: Vec,
            budget: Budget) -> tuple[bool, bool]:
    """Search c11 with c11, a1-c11, b1-c11, a2-b1+c11 all in the cone.

    Returns (found, soundly_exhausted): over dense coordinates the LP is
    complete, so a miss refutes; over lattices only the window is swept.
    """
    f = G.formula()
    ident = [[Fraction(1 if i == j else 0) for j in range(G.rank)]
             for i in range(G.rank)]
    neg = _neg_matrix(G.rank)
    system = conj(
        lindsl.substitute(f, ident, _zero_shift(G.rank)),
        lindsl.substitute(f, neg, list(a1.coords)),
        lindsl.substitute(f, neg, list(b1.coords)),
        lindsl.substitute(f, ident, list((a2 - b1).coords)),
    )
    point = lindsl.feasible(system, G.rank)
    if point is None:
        return False, True
    if G.in_group(point):
        return True, True
    if G.dense:
        return True, True
    for c11 in lattice_points(G, 2 * budget.window + 2):
        if (G.contains(c11) and G.contains(a1 - c11)
                and G.contains(b1 - c11) and G.contains(a2 - b1 + c11)):
            return True, True
    return False, False
