"""States, state spaces, and group-valued states with their fiber
decompositions.

Real-valued states on finite algebras live in an exact rational
polytope: s(0) = 0, s(1) = 1, s(i) + s(j) = s(k) per table entry, s >= 0
(upper bounds follow from the complement rows). Feasibility and
per-element extremes run through the in-house simplex, so every number
reported is an exact fraction.

Group-valued states target an interval [0, u] of a unital po-group; the
valued ones correspond bijectively to fiber decompositions of the host,
and both directions of that correspondence are implemented and checked.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import lindsl, pogroup
from .effalg import (EffectAlgebra, FiniteEffectAlgebra,
                     IntervalEffectAlgebra, enumerate_algebra, sample_carrier)
from .errors import (CarrierError, NotEnumerableError,
                     UnsupportedOperationError)
from .lindsl import conj
from .linsolve import OPTIMAL, lp_solve
from .pogroup import ConePoGroup
from .vecs import Vec, rat_str
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)

F = Fraction


@dataclass(frozen=True)
class FiniteState:
    """Per-element rational values on a finite host."""

    values: tuple[Fraction, ...]

    def __call__(self, i: int) -> Fraction:
        return self.values[i]


@dataclass(frozen=True)
class LinearState:
    """s(x) = row . x on an interval host (states fix s(0) = 0, so the
    map is linear, not affine)."""

    row: tuple[Fraction, ...]

    def __call__(self, x: Vec) -> Fraction:
        return sum(c * v for c, v in zip(self.row, x.coords))


State = Union[FiniteState, LinearState]


# ---------------------------------------------------------------------------
# The state polytope of a finite algebra


def _state_system(E: FiniteEffectAlgebra):
    rows, rhs = [], []
    n = E.n

    def unit_row(i):
        return [F(1) if j == i else F(0) for j in range(n)]

    rows.append(unit_row(E.zero))
    rhs.append(F(0))
    rows.append(unit_row(E.one))
    rhs.append(F(1))
    for i in range(n):
        for j in range(i, n):
            k = E.table[i][j]
            if k is None:
                continue
            row = [F(0)] * n
            row[i] += 1
            row[j] += 1
            row[k] -= 1
            rows.append(row)
            rhs.append(F(0))
    return rows, rhs


def state_feasible(E: FiniteEffectAlgebra) -> Optional[FiniteState]:
    """Some state, or None (general effect algebras may admit none)."""
    rows, rhs = _state_system(E)
    res = lp_solve(rows, rhs, [F(0)] * E.n)
    if res.status != OPTIMAL:
        return None
    return FiniteState(tuple(res.x))


def state_extremes(E: FiniteEffectAlgebra,
                   a: int) -> Optional[tuple[Fraction, Fraction]]:
    """(min, max) of s(a) over the state polytope; None when empty."""
    rows, rhs = _state_system(E)
    cost = [F(0)] * E.n
    cost[a] = F(1)
    lo = lp_solve(rows, rhs, cost)
    if lo.status != OPTIMAL:
        return None
    hi = lp_solve(rows, rhs, [-c for c in cost])
    return lo.value, -hi.value


def extreme_states(E: FiniteEffectAlgebra
                   ) -> list[tuple[int, FiniteState, FiniteState]]:
    """For each element, vertex states attaining its min and max."""
    rows, rhs = _state_system(E)
    out = []
    for a in range(E.n):
        cost = [F(0)] * E.n
        cost[a] = F(1)
        lo = lp_solve(rows, rhs, cost)
        if lo.status != OPTIMAL:
            return []
        hi = lp_solve(rows, rhs, [-c for c in cost])
        out.append((a, FiniteState(tuple(lo.x)), FiniteState(tuple(hi.x))))
    return out


def verify_state(E: EffectAlgebra, s: State,
                 budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """s(1) = 1, additivity on defined sums, values within [0, 1]."""
    if isinstance(E, FiniteEffectAlgebra):
        if s.values[E.one] != 1 or s.values[E.zero] != 0:
            return refuted("boundary values wrong")
        for a in E.elements():
            if not 0 <= s.values[a] <= 1:
                return refuted("value out of range", witness=E.labels[a])
            for b in E.elements():
                k = E.table[a][b]
                if k is not None and s.values[a] + s.values[b] != s.values[k]:
                    return refuted("additivity fails",
                                   witness=(E.labels[a], E.labels[b]))
        return proved("state conditions verified exhaustively")
    if s(E.unit) != 1:
        return refuted("s(1) != 1")
    row_formula = lindsl.Atom(tuple(-c for c in s.row), lindsl.GT)
    carrier = _interval_carrier(E)
    below = lindsl.feasible(conj(carrier, row_formula), E.rank)
    over = lindsl.feasible(
        conj(carrier, lindsl.Atom(s.row, lindsl.GT, F(-1))), E.rank)
    for bad in (below, over):
        if bad is not None and (E.group.dense or E.group.in_group(bad)):
            return refuted("value out of range", witness=bad)
    if E.group.dense:
        return proved("range checked by linear feasibility; additivity is"
                      " linearity")
    if below is None and over is None:
        return proved("range checked by linear feasibility; additivity is"
                      " linearity")
    return witnessed("no lattice violation found", budget=budget)


def _interval_carrier(E: IntervalEffectAlgebra):
    cf = E.group.formula()
    neg = [[F(-1 if i == j else 0) for j in range(E.rank)]
           for i in range(E.rank)]
    return conj(cf, lindsl.substitute(cf, neg, list(E.unit.coords)))


# ---------------------------------------------------------------------------
# Uniqueness


@dataclass(frozen=True)
class UniqueStateReport:
    verdict: Verdict
    state: Optional[State]


def unique_state(E: EffectAlgebra,
                 budget: Budget = DEFAULT_BUDGET) -> UniqueStateReport:
    """Whether exactly one state exists.

    Finite hosts compare per-element extremes. Interval hosts with a
    declared split reduce to the head interval: states on the host and
    on the head correspond bijectively (the transfer maps below), so the
    host has a unique state iff the head does.
    """
    if isinstance(E, FiniteEffectAlgebra):
        found = state_feasible(E)
        if found is None:
            return UniqueStateReport(refuted("no state at all"), None)
        for a in E.elements():
            lo, hi = state_extremes(E, a)
            if lo != hi:
                return UniqueStateReport(
                    refuted(f"extremes differ at {E.labels[a]}:"
                            f" [{rat_str(lo)}, {rat_str(hi)}]",
                            witness=E.labels[a]),
                    None)
        return UniqueStateReport(proved("all extremes coincide"), found)
    head = E.head_interval()
    if not head.enumerable:
        raise NotEnumerableError("head interval is not enumerable")
    table = enumerate_algebra(head)
    sub = unique_state(table)
    if not sub.verdict.holds:
        return UniqueStateReport(
            Verdict(sub.verdict.kind,
                    "head interval: " + sub.verdict.reason,
                    sub.verdict.witness),
            None)
    lifted = state_transfer(E, sub.state)
    return UniqueStateReport(
        proved("head interval has a unique state, and states correspond"
               " bijectively"), lifted)


# ---------------------------------------------------------------------------
# Transfer along a lexicographic split


def _head_state_row(E: IntervalEffectAlgebra, s_head: FiniteState
                    ) -> tuple[Fraction, ...]:
    """Recover the linear form of a state on the enumerated head box."""
    r = E.split()
    table = enumerate_algebra(E.head_interval())
    index = {v: i for i, v in enumerate(table.coords)}
    row = []
    for i in range(r):
        step = E.group.steps[i]
        probe = Vec(tuple(step if j == i else F(0) for j in range(r)))
        if probe in index:
            row.append(s_head.values[index[probe]] / step)
        else:
            row.append(F(0))  # unit has a zero coordinate; fiber untouched
    return tuple(row)


def state_transfer(E: IntervalEffectAlgebra,
                   s_head: FiniteState) -> LinearState:
    """Lift a state on the enumerated head interval to the host:
    s(h, g) = s_head(h)."""
    r = E.split()
    row = _head_state_row(E, s_head) + (F(0),) * (E.rank - r)
    return LinearState(row)


def state_restrict(E: IntervalEffectAlgebra, s: LinearState) -> FiniteState:
    """Restrict a host state to the head via h -> s(h, 0).

    For a genuine state the tail coefficients must vanish (the zero
    fiber carries arbitrarily large positive tails); nonzero tail
    coefficients are rejected with a scaling witness.
    """
    r = E.split()
    tail_row = s.row[r:]
    if any(c != 0 for c in tail_row):
        g = pogroup.strictly_positive_element(E.tail_group().cone)
        raise CarrierError(
            f"tail coefficients {tuple(map(rat_str, tail_row))} nonzero:"
            f" values on the zero fiber {Vec.zero(r).concat(g)} scale"
            " without bound")
    table = enumerate_algebra(E.head_interval())
    values = tuple(sum(c * v for c, v in zip(s.row[:r], t.coords))
                   for t in table.coords)
    return FiniteState(values)


def check_zero_fiber_vanishing(E: IntervalEffectAlgebra, s: LinearState,
                               budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """s(0, g) = 0 for sampled positive tails."""
    r = E.split()
    rng = random.Random(budget.seed)
    tail = E.tail_group()
    for g in pogroup.sample_vectors(tail, rng, budget.samples,
                                    budget.window):
        g = g if tail.contains(g) else -g
        if not tail.contains(g):
            continue
        x = Vec.zero(r).concat(g)
        if E.contains(x) and s(x) != 0:
            return refuted("state does not vanish on the zero fiber",
                           witness=x, budget=budget)
    return witnessed("vanishes on all sampled zero-fiber elements",
                     budget=budget)


# ---------------------------------------------------------------------------
# Group-valued states


@dataclass(frozen=True)
class HuState:
    """An additive map into the interval [0, u] of a target group."""

    target: ConePoGroup  # carries the unit u
    table: Optional[tuple[Vec, ...]] = None      # finite host
    head_rank: Optional[int] = None              # interval host: projection

    def value(self, E: EffectAlgebra, x) -> Vec:
        if self.table is not None:
            return self.table[x]
        return x.head(self.head_rank)


def projection_hu_state(E: IntervalEffectAlgebra) -> HuState:
    """The canonical head projection of a split interval host."""
    r = E.split()
    return HuState(target=E.head_group(), head_rank=r)


def finite_hu_state(E: FiniteEffectAlgebra, target: ConePoGroup,
                    values) -> HuState:
    return HuState(target=target, table=tuple(values))


def verify_hu_state(E: EffectAlgebra, s: HuState,
                    budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """s(1) = u, additivity, image inside [0, u] of the target."""
    u = s.target.unit
    box = _target_box(s.target)
    if isinstance(E, FiniteEffectAlgebra):
        if s.table is None or len(s.table) != E.n:
            return refuted("table shape mismatch")
        if s.table[E.one] != u:
            return refuted("s(1) != u")
        for a in E.elements():
            va = s.table[a]
            if not (s.target.contains(va) and s.target.contains(u - va)):
                return refuted("image outside [0, u]", witness=E.labels[a])
            for b in E.elements():
                k = E.table[a][b]
                if k is not None and s.table[a] + s.table[b] != s.table[k]:
                    return refuted("additivity fails",
                                   witness=(E.labels[a], E.labels[b]))
        return proved("conditions verified exhaustively")
    if s.head_rank != E.split():
        return refuted("projection rank differs from the declared split")
    return proved("head projection: additivity and range are structural"
                  " (heads of carrier elements lie in [0, u])")


def hu_state_valued(E: EffectAlgebra, s: HuState,
                    budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Whether the image is all of [0, u] in the target."""
    box = _target_box(s.target)
    if isinstance(E, FiniteEffectAlgebra):
        image = set(s.table)
        missing = [t for t in box if t not in image]
        if missing:
            return refuted("fiber empty", witness=missing[0])
        return proved("every target value attained")
    u_h = s.target.unit
    if u_h.is_zero():
        return refuted("degenerate target")
    return proved("every fiber of the projection contains an element"
                  " (heads strictly between 0 and u admit any tail)")


def _target_box(target: ConePoGroup) -> list[Vec]:
    probe = IntervalEffectAlgebra(target, target.unit)
    if not probe.enumerable:
        raise NotEnumerableError("target interval is not enumerable")
    return list(probe.carrier_elements())


# ---------------------------------------------------------------------------
# Decompositions


@dataclass(frozen=True)
class HuDecomposition:
    """A fiber partition indexed by the target interval [0, u]."""

    target: ConePoGroup
    assign: Optional[tuple[Vec, ...]] = None     # finite host
    head_rank: Optional[int] = None              # interval host: fibers by head

    def fiber_of(self, x) -> Vec:
        if self.assign is not None:
            return self.assign[x]
        return x.head(self.head_rank)


def hu_state_to_decomposition(E: EffectAlgebra, s: HuState) -> HuDecomposition:
    """Fibers are the preimages of target values; requires a valued state."""
    valued = hu_state_valued(E, s)
    if not valued.holds:
        raise CarrierError("state is not valued: " + valued.describe())
    return HuDecomposition(target=s.target, assign=s.table,
                           head_rank=s.head_rank)


def decomposition_to_hu_state(E: EffectAlgebra,
                              D: HuDecomposition) -> HuState:
    """Read the state back off the fibers: s(x) = t iff x lies in fiber t."""
    return HuState(target=D.target, table=D.assign, head_rank=D.head_rank)


def validate_decomposition(E: EffectAlgebra, D: HuDecomposition,
                           budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Partition into nonempty fibers with complement symmetry and
    fiber-additive sums."""
    u = D.target.unit
    if isinstance(E, FiniteEffectAlgebra):
        box = _target_box(D.target)
        fibers = {t: [] for t in box}
        for x in E.elements():
            t = D.assign[x]
            if t not in fibers:
                return refuted("fiber index outside [0, u]",
                               witness=E.labels[x])
            fibers[t].append(x)
        empty = [t for t, members in fibers.items() if not members]
        if empty:
            return refuted("empty fiber", witness=empty[0])
        for x in E.elements():
            if D.assign[E.complement(x)] != u - D.assign[x]:
                return refuted("complement symmetry fails",
                               witness=E.labels[x])
        for x in E.elements():
            for y in E.elements():
                k = E.table[x][y]
                if k is None:
                    continue
                t = D.assign[x] + D.assign[y]
                if not D.target.contains(u - t):
                    return refuted("defined sum with fiber indices"
                                   " exceeding u",
                                   witness=(E.labels[x], E.labels[y]))
                if D.assign[k] != t:
                    return refuted("sum lands in the wrong fiber",
                                   witness=(E.labels[x], E.labels[y]))
        return proved("decomposition conditions verified exhaustively")
    if D.head_rank != E.split():
        return refuted("fiber rank differs from the declared split")
    rng = random.Random(budget.seed)
    for x in sample_carrier(E, rng, budget.samples, budget.window):
        if D.fiber_of(E.complement(x)) != u - D.fiber_of(x):
            return refuted("complement symmetry fails", witness=x,
                           budget=budget)
    return witnessed("complement symmetry on samples; sums are"
                     " head-additive by construction", budget=budget)


def validate_hu_state_extension(E: EffectAlgebra, s: HuState,
                                budget: Budget = DEFAULT_BUDGET
                                ) -> list[tuple[str, Verdict]]:
    """The derived properties of a group-valued state: s(0) = 0,
    monotonicity, and complement symmetry."""
    u = s.target.unit
    out = []
    if isinstance(E, FiniteEffectAlgebra):
        zero_ok = s.table[E.zero].is_zero()
        out.append(("zero", proved() if zero_ok else
                    refuted("s(0) != 0", witness=s.table[E.zero])))
        mono = proved("monotone on all pairs")
        for a in E.elements():
            for b in E.elements():
                if E.leq(a, b) and not s.target.leq(s.table[a], s.table[b]):
                    mono = refuted("not monotone",
                                   witness=(E.labels[a], E.labels[b]))
        out.append(("monotone", mono))
        comp = proved("complement symmetry on all elements")
        for a in E.elements():
            if s.table[E.complement(a)] != u - s.table[a]:
                comp = refuted("complement symmetry fails",
                               witness=E.labels[a])
        out.append(("complement", comp))
        return out
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples, budget.window)
    out.append(("zero", proved() if s.value(E, E.zero_elem()).is_zero()
                else refuted("s(0) != 0")))
    mono: Verdict = witnessed("monotone on sampled pairs", budget=budget)
    for a, b in itertools.combinations(pool, 2):
        for x, y in ((a, b), (b, a)):
            if E.leq(x, y) and not s.target.leq(s.value(E, x),
                                                s.value(E, y)):
                mono = refuted("not monotone", witness=(x, y), budget=budget)
    out.append(("monotone", mono))
    comp: Verdict = witnessed("complement symmetry on samples",
                              budget=budget)
    for a in pool:
        if s.value(E, E.complement(a)) != u - s.value(E, a):
            comp = refuted("complement symmetry fails", witness=a,
                           budget=budget)
    out.append(("complement", comp))
    return out


def search_valued_state(E: FiniteEffectAlgebra,
                        target: ConePoGroup) -> Optional[HuState]:
    """Backtracking search for a valued state onto the target interval.

    Deterministic: elements and candidate values are tried in index
    order, so repeated runs return the same witness.
    """
    box = _target_box(target)
    u = target.unit
    values: list[Optional[Vec]] = [None] * E.n
    values[E.zero] = Vec.zero(u.rank)
    values[E.one] = u

    def consistent(assigned: list[int]) -> bool:
        for a in assigned:
            va = values[a]
            if not (target.contains(va) and target.contains(u - va)):
                return False
            for b in assigned:
                k = E.table[a][b]
                if k is None:
                    continue
                if values[k] is not None and values[a] + values[b] != \
                        values[k]:
                    return False
        return True

    order = [x for x in E.elements() if values[x] is None]

    def search(idx: int, assigned: list[int]) -> bool:
        if not consistent(assigned):
            return False
        if idx == len(order):
            image = {tuple(v.coords) for v in values}
            return all(tuple(t.coords) in image for t in box)
        x = order[idx]
        for t in box:
            values[x] = t
            if search(idx + 1, assigned + [x]):
                return True
        values[x] = None
        return False

    if search(0, [E.zero, E.one]):
        return HuState(target=target, table=tuple(values))
    return None
