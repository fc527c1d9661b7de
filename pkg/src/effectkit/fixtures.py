"""The bundled fixture catalog.

Finite tables: chains C_n, the Boolean square B4, the horizontal sum HS4
(two three-chains glued at 0 and 1; the standard non-RDP witness), and
B22, the 3x3 box. Symbolic intervals: LEX1/LEX21/LEX3 over lexicographic
integer lattices, SQ (the rational unit square under product order), and
K61 (the rational plane with the zero-or-strictly-positive-quadrant
cone: an antilattice that is simple and has RDP but is not a lattice).
"""

from __future__ import annotations

from fractions import Fraction

from . import lindsl
from .effalg import (FiniteEffectAlgebra, IntervalEffectAlgebra,
                     enumerate_algebra, interval_algebra)
from .pogroup import ConePoGroup, CustomCone, LexCone, ProductCone, lex_product
from .vecs import Vec

F = Fraction


def int_group(rank: int, unit=None) -> ConePoGroup:
    """Z^rank under the product order."""
    return ConePoGroup(rank, ProductCone(rank), unit=unit)


def rational_group(rank: int, unit=None) -> ConePoGroup:
    """Q^rank under the product order."""
    return ConePoGroup(rank, ProductCone(rank), unit=unit,
                       steps=(F(0),) * rank)


def chain(n: int) -> FiniteEffectAlgebra:
    """C_n: the (n+1)-element chain, the interval [0, n] of the integers."""
    E = interval_algebra(int_group(1, Vec.of(n)))
    return enumerate_algebra(E)


def b4() -> FiniteEffectAlgebra:
    """The Boolean square: [0, (1,1)] of Z^2, relabelled 0, a, b, 1."""
    E = enumerate_algebra(interval_algebra(int_group(2, Vec.of(1, 1))))
    return FiniteEffectAlgebra(labels=("0", "b", "a", "1"), table=E.table,
                               zero=E.zero, one=E.one, coords=E.coords)


def b22() -> FiniteEffectAlgebra:
    """The 3x3 box [0, (2,2)] of Z^2 (nine elements)."""
    return enumerate_algebra(interval_algebra(int_group(2, Vec.of(2, 2))))


def hs4() -> FiniteEffectAlgebra:
    """Horizontal sum {0, a, b, 1}: a+a = b+b = 1, a+b undefined."""
    U = None
    table = (
        (0, 1, 2, 3),
        (1, 3, U, U),
        (2, U, 3, U),
        (3, U, U, U),
    )
    return FiniteEffectAlgebra(labels=("0", "a", "b", "1"), table=table,
                               zero=0, one=3)


def lex1() -> IntervalEffectAlgebra:
    """[0, (1,0)] of Z lex Z: the basic perfect interval."""
    G = lex_product(int_group(1, Vec.of(1)), int_group(1))
    return interval_algebra(G, head_rank=1)


def lex21() -> IntervalEffectAlgebra:
    """[0, (2,1)] of Z lex Z: the interval whose only nontrivial ideal is
    not retractive."""
    G = lex_product(int_group(1, Vec.of(2)), int_group(1))
    G = G.with_unit(Vec.of(2, 1))
    return interval_algebra(G, head_rank=1)


def lex3() -> IntervalEffectAlgebra:
    """[0, (1,0,0)] of Z lex Z lex Z, split after the first coordinate."""
    inner = lex_product(int_group(1, Vec.of(1)), int_group(1))
    G = lex_product(int_group(1, Vec.of(1)),
                    ConePoGroup(2, inner.cone, steps=inner.steps))
    return interval_algebra(G, head_rank=1)


def sq() -> IntervalEffectAlgebra:
    """The rational unit square [0, (1,1)] of Q^2 under product order."""
    return interval_algebra(rational_group(2, Vec.of(1, 1)))


K61_PREDICATE = lindsl.parse_formula(
    "(x0 = 0 & x1 = 0) | (x0 > 0 & x1 > 0)", 2)


def k61_group() -> ConePoGroup:
    return ConePoGroup(2, CustomCone(2, K61_PREDICATE), unit=Vec.of(1, 1),
                       steps=(F(0), F(0)))


def k61() -> IntervalEffectAlgebra:
    """[0, (1,1)] of the rational plane ordered by the strictly-positive
    quadrant (plus zero): simple, antilattice, RDP, not a lattice."""
    return interval_algebra(k61_group())


def finite_catalog() -> dict[str, FiniteEffectAlgebra]:
    return {
        "C2": chain(2),
        "C3": chain(3),
        "C4": chain(4),
        "B4": b4(),
        "B22": b22(),
        "HS4": hs4(),
    }


def interval_catalog() -> dict[str, IntervalEffectAlgebra]:
    return {
        "LEX1": lex1(),
        "LEX21": lex21(),
        "LEX3": lex3(),
        "SQ": sq(),
        "K61": k61(),
    }


def catalog() -> dict[str, object]:
    out: dict[str, object] = {}
    out.update(finite_catalog())
    out.update(interval_catalog())
    return out
