"""Homomorphisms between effect algebras.

Finite-to-finite maps are index tables; interval-to-interval maps are
rational matrices (additive maps fixing 0). Verification is exhaustive
on finite carriers and sampled on symbolic ones.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .effalg import (EffectAlgebra, FiniteEffectAlgebra,
                     IntervalEffectAlgebra, sample_carrier)
from .errors import RankMismatchError
from .ideals import FiniteIdeal, SymbolicIdeal, is_ideal
from .vecs import Vec
from .verdicts import (Budget, DEFAULT_BUDGET, Verdict, proved, refuted,
                       unknown, witnessed)

F = Fraction


@dataclass(frozen=True)
class FiniteHom:
    source: FiniteEffectAlgebra
    target: FiniteEffectAlgebra
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class AffineHom:
    """x -> M x between interval hosts (additive, so no shift)."""

    source: IntervalEffectAlgebra
    target: IntervalEffectAlgebra
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, x: Vec) -> Vec:
        return Vec(tuple(sum(r * c for r, c in zip(row, x.coords))
                         for row in self.matrix))


Homomorphism = Union[FiniteHom, AffineHom]


def projection_hom(E: FiniteEffectAlgebra, q) -> FiniteHom:
    """The canonical projection of an ideals.Quotient as a morphism."""
    return FiniteHom(E, q.algebra, tuple(q.class_of))


def verify_hom(h: Homomorphism, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """h(1) = 1 and h preserves defined sums."""
    if isinstance(h, FiniteHom):
        E, G = h.source, h.target
        if len(h.map) != E.n:
            raise RankMismatchError("map length differs from carrier size")
        if h.map[E.one] != G.one:
            return refuted("h(1) != 1")
        for a in E.elements():
            for b in E.elements():
                k = E.table[a][b]
                if k is None:
                    continue
                if G.table[h.map[a]][h.map[b]] != h.map[k]:
                    return refuted("additivity fails",
                                   witness=(E.labels[a], E.labels[b]))
        return proved("conditions verified exhaustively")
    E, G = h.source, h.target
    if len(h.matrix) != G.rank or any(len(r) != E.rank for r in h.matrix):
        raise RankMismatchError("matrix shape mismatch")
    if h(E.unit) != G.unit:
        return refuted("h(1) != 1")
    rng = random.Random(budget.seed)
    pool = sample_carrier(E, rng, budget.samples, budget.window)
    for x in pool:
        if not G.contains(h(x)):
            return refuted("image leaves the carrier", witness=x,
                           budget=budget)
    for x, y in itertools.combinations(pool, 2):
        if E.defined(x, y) and not G.defined(h(x), h(y)):
            return refuted("defined sum maps to an undefined one",
                           witness=(x, y), budget=budget)
    return witnessed("conditions hold on samples (additivity is linear)",
                     budget=budget)


def kernel(h: Homomorphism):
    """Ker(h) = preimage of 0; always an ideal of the source."""
    if isinstance(h, FiniteHom):
        ker = FiniteIdeal(frozenset(
            x for x in h.source.elements() if h.map[x] == h.target.zero))
        verdict = is_ideal(h.source, ker)
        return ker, verdict
    from . import lindsl
    rows = tuple(lindsl.Atom(row, lindsl.EQ) for row in h.matrix)
    ker = SymbolicIdeal(lindsl.And(rows), label="ker")
    return ker, is_ideal(h.source, ker)


def surjective(h: FiniteHom) -> bool:
    return set(h.map) == set(h.target.elements())


def injective(h: FiniteHom) -> bool:
    return len(set(h.map)) == len(h.map)


# ---------------------------------------------------------------------------
# Isomorphism search


def _degree_signature(E: FiniteEffectAlgebra, x: int) -> tuple:
    defined = sum(1 for y in E.elements() if E.table[x][y] is not None)
    below = sum(1 for y in E.elements() if E.leq(y, x))
    above = sum(1 for y in E.elements() if E.leq(x, y))
    return defined, below, above


def iso_search(E: FiniteEffectAlgebra,
               F_: FiniteEffectAlgebra) -> Optional[FiniteHom]:
    """Backtracking isomorphism search with degree-signature pruning."""
    if E.n != F_.n:
        return None
    sig_e = {x: _degree_signature(E, x) for x in E.elements()}
    sig_f = {x: _degree_signature(F_, x) for x in F_.elements()}
    if sorted(sig_e.values()) != sorted(sig_f.values()):
        return None
    mapping: list[Optional[int]] = [None] * E.n
    used = [False] * F_.n
    mapping[E.zero] = F_.zero
    used[F_.zero] = True
    if E.one != E.zero:
        if used[F_.one]:
            return None
        mapping[E.one] = F_.one
        used[F_.one] = True
    order = sorted((x for x in E.elements() if mapping[x] is None),
                   key=lambda x: sig_e[x])

    def compatible(x: int, y: int) -> bool:
        for a in E.elements():
            if mapping[a] is None:
                continue
            for p, q in ((x, a), (a, x)):
                k = E.table[p][q]
                img_p = y if p == x else mapping[p]
                img_q = y if q == x else mapping[q]
                fk = F_.table[img_p][img_q]
                if (k is None) != (fk is None):
                    return False
                if k is not None and mapping[k] is not None \
                        and mapping[k] != fk:
                    return False
        return True

    def search(idx: int) -> bool:
        if idx == len(order):
            return True
        x = order[idx]
        for y in F_.elements():
            if used[y] or sig_f[y] != sig_e[x]:
                continue
            if not compatible(x, y):
                continue
            mapping[x] = y
            used[y] = True
            if search(idx + 1):
                return True
            mapping[x] = None
            used[y] = False
        return False

    if not search(0):
        return None
    h = FiniteHom(E, F_, tuple(mapping))
    if not verify_hom(h).holds:
        return None
    return h


# ---------------------------------------------------------------------------
# The kernel-witness property and fullness


def has_sim_property(h: FiniteHom) -> Verdict:
    """h(x) = h(y) iff x - e = y - g for kernel elements e <= x, g <= y."""
    E = h.source
    if not surjective(h):
        return refuted("property is defined for surjective maps")
    ker, _ = kernel(h)
    for x in E.elements():
        for y in E.elements():
            same = h.map[x] == h.map[y]
            witnessed_pair = _kernel_witness(E, ker.elements, x, y)
            if same != witnessed_pair:
                return refuted("kernel witnesses disagree with equality"
                               " of images",
                               witness=(E.labels[x], E.labels[y]))
    return proved("checked on all pairs")


def _kernel_witness(E: FiniteEffectAlgebra, ker, x: int, y: int) -> bool:
    for e in ker:
        if not E.leq(e, x):
            continue
        rest = E.minus(x, e)
        for g in ker:
            if E.table[rest][g] == y:
                return True
    return False


def is_full(h: FiniteHom) -> Verdict:
    """Defined sums of images lift to defined sums of preimages."""
    E, G = h.source, h.target
    for a in E.elements():
        for b in E.elements():
            if G.table[h.map[a]][h.map[b]] is None:
                continue
            if not _liftable(E, h, a, b):
                return refuted("image sum does not lift",
                               witness=(E.labels[a], E.labels[b]))
    return proved("checked on all pairs")


def _liftable(E: FiniteEffectAlgebra, h: FiniteHom, a: int, b: int) -> bool:
    for a1 in E.elements():
        if h.map[a1] != h.map[a]:
            continue
        for b1 in E.elements():
            if h.map[b1] != h.map[b]:
                continue
            if E.table[a1][b1] is not None:
                return True
    return False
