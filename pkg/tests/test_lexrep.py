from fractions import Fraction

import pytest

from effectkit import fixtures, lexrep
from effectkit.effalg import check_rdp, classify_order, enumerate_algebra
from effectkit.errors import UnsupportedOperationError
from effectkit.ideals import canonical_fiber_ideal, is_lexicographic
from effectkit.lexrep import (ClassReport, canonical_decomposition,
                              classify_local_retractive,
                              decompositions_equal, find_strong_family,
                              functor_map, is_directed_decomposition,
                              is_ordered_decomposition,
                              ordered_decomposition_consequences,
                              quotient_head_iso, represent,
                              represent_canonical, subdirect_decompose,
                              verify_strong_family)
from effectkit.morphisms import iso_search
from effectkit.pogroup import ConePoGroup, ProductCone
from effectkit.states import HuDecomposition
from effectkit.vecs import Vec
from effectkit.verdicts import Budget

F = Fraction
BUDGET = Budget(window=3, samples=60, seed=23)


def identity_decomposition(E):
    rank = E.coords[0].rank
    target = ConePoGroup(rank, ProductCone(rank), unit=E.coords[E.one])
    return HuDecomposition(target=target, assign=E.coords)


# -- ordered / directed --------------------------------------------------------

def test_lex_canonical_ordered(lex1, lex21, lex3):
    for E in (lex1, lex21, lex3):
        rep = is_ordered_decomposition(E, canonical_decomposition(E), BUDGET)
        assert rep.fiber_order.holds
        assert rep.sum_existence.holds
        assert rep.agree.holds
        assert rep.pairs_checked > 0


def test_b4_identity_ordered_vacuously(b4):
    # incomparable box indices impose no constraint, and no index pair
    # sums strictly below (1,1), so both criteria hold vacuously
    rep = is_ordered_decomposition(b4, identity_decomposition(b4))
    assert rep.fiber_order.holds
    assert rep.sum_existence.holds
    assert rep.agree.holds


def test_broken_decomposition_not_ordered(c4):
    # swap the fibers of 1 and 3: fiber indices 1 < 2 now hold elements
    # 3 and 2, which violates the fiber order
    target = ConePoGroup(1, ProductCone(1), unit=Vec.of(4))
    assign = list(c4.coords)
    assign[1], assign[3] = assign[3], assign[1]
    D = HuDecomposition(target=target, assign=tuple(assign))
    rep = is_ordered_decomposition(c4, D)
    assert rep.fiber_order.kind == "refuted"
    assert rep.sum_existence.kind == "refuted"
    assert rep.agree.holds


def test_chain_identity_ordered(c4):
    rep = is_ordered_decomposition(c4, identity_decomposition(c4))
    assert rep.verdict.holds


def test_directed(lex1, lex3, b4, c4):
    assert is_directed_decomposition(
        lex1, canonical_decomposition(lex1), BUDGET).kind == "proved"
    assert is_directed_decomposition(
        lex3, canonical_decomposition(lex3), BUDGET).kind == "proved"
    assert is_directed_decomposition(b4, identity_decomposition(b4)).holds
    assert is_directed_decomposition(c4, identity_decomposition(c4)).holds


def test_consequences_lex(lex1, lex21, lex3):
    for E in (lex1, lex21, lex3):
        D = canonical_decomposition(E)
        report = dict(ordered_decomposition_consequences(E, D, BUDGET))
        for name, verdict in report.items():
            assert verdict.holds, (name, verdict.describe())


def test_consequences_chain(c4):
    report = dict(ordered_decomposition_consequences(
        c4, identity_decomposition(c4)))
    for name, verdict in report.items():
        assert verdict.holds, name


def test_uniqueness_comparison(lex3):
    D1 = canonical_decomposition(lex3)
    D2 = canonical_decomposition(lex3)
    assert decompositions_equal(lex3, D1, D2, BUDGET).holds


# -- quotient head isomorphism ---------------------------------------------------

def test_quotient_head_lex1(lex1):
    res = quotient_head_iso(lex1, canonical_decomposition(lex1))
    assert res.verdict.holds
    assert res.quotient_algebra.n == 2
    assert iso_search(res.quotient_algebra, fixtures.chain(1)) is not None


def test_quotient_head_lex21(lex21):
    res = quotient_head_iso(lex21, canonical_decomposition(lex21))
    assert res.verdict.holds
    assert res.quotient_algebra.n == 3
    assert iso_search(res.quotient_algebra, fixtures.chain(2)) is not None


def test_quotient_head_finite(c4):
    res = quotient_head_iso(c4, identity_decomposition(c4))
    assert res.verdict.holds
    assert res.quotient_algebra.n == 5


# -- strong families -------------------------------------------------------------

def test_family_lex1(lex1):
    D = canonical_decomposition(lex1)
    v, fam = find_strong_family(lex1, D)
    assert v.kind == "proved"
    assert fam.value(Vec.of(0)) == Vec.of(0, 0)
    assert fam.value(Vec.of(1)) == Vec.of(1, 0)
    assert verify_strong_family(lex1, D, fam).holds


def test_family_lex3(lex3):
    D = canonical_decomposition(lex3)
    v, fam = find_strong_family(lex3, D)
    assert v.holds
    assert fam.value(Vec.of(1)) == Vec.of(1, 0, 0)


def test_family_lex21_refuted(lex21):
    D = canonical_decomposition(lex21)
    v, fam = find_strong_family(lex21, D)
    assert v.kind == "refuted"
    assert fam is None
    assert "2*c" in v.reason and "no solution" in v.reason


def test_family_b4(b4):
    D = identity_decomposition(b4)
    v, fam = find_strong_family(b4, D)
    assert v.holds
    assert verify_strong_family(b4, D, fam).holds


# -- representation ---------------------------------------------------------------

def test_represent_lex1(lex1):
    attempt = represent_canonical(lex1, BUDGET)
    assert attempt.verdict.holds
    rep = attempt.representation
    assert rep.head.rank == 1 and rep.tail.rank == 1
    x = Vec.of(1, -4)
    assert rep.from_target(rep.to_target(x)) == x
    assert rep.to_target(x).head(1) == Vec.of(1)


def test_represent_lex3(lex3):
    attempt = represent_canonical(lex3, BUDGET)
    assert attempt.verdict.holds
    rep = attempt.representation
    assert rep.tail.rank == 2
    assert len(fixtures.lex3().lex_boundaries()) == 2
    for name, v in rep.checks:
        assert v.holds, (name, v.describe())


def test_represent_lex21_fails(lex21):
    attempt = represent_canonical(lex21, BUDGET)
    assert not attempt.verdict.holds
    assert attempt.verdict.kind == "refuted"
    assert attempt.representation is None


def test_represent_finite(c4, b4):
    for E in (c4, b4):
        D = identity_decomposition(E)
        v, fam = find_strong_family(E, D)
        rep = represent(E, D, fam)
        assert rep.verdict.holds
        for x in E.elements():
            assert rep.from_target(rep.to_target(x)) == x


# -- functor action ----------------------------------------------------------------

def test_functor_identity(lex1):
    tail = fixtures.int_group(1)
    res = functor_map(lex1, tail, ((F(1),),), BUDGET)
    assert res.cone_preserving.holds
    assert res.homomorphism.holds
    assert res.injective.holds
    assert res.surjective.holds


def test_functor_doubling(lex1):
    tail = fixtures.int_group(1)
    res = functor_map(lex1, tail, ((F(2),),), BUDGET)
    assert res.cone_preserving.holds
    assert res.injective.holds
    assert res.surjective.kind == "refuted"


def test_functor_projection(lex3):
    tail = fixtures.int_group(1)
    res = functor_map(lex3, tail, ((F(1), F(0)),), BUDGET)
    assert res.homomorphism.holds
    assert res.injective.kind == "refuted"
    assert res.surjective.holds


def test_functor_rejects_non_cone_map(lex1):
    tail = fixtures.int_group(1)
    res = functor_map(lex1, tail, ((F(-1),),), BUDGET)
    assert res.cone_preserving.kind == "refuted"


# -- classification -----------------------------------------------------------------

def test_classify_lex1(lex1):
    report = classify_local_retractive(lex1, BUDGET)
    assert report.branch_local.holds
    assert report.branch_strong.holds
    assert report.branch_repr.holds
    assert report.consistent.holds


def test_classify_lex21(lex21):
    report = classify_local_retractive(lex21, BUDGET)
    assert report.local.holds
    assert report.radical_retractive.kind == "refuted"
    assert not report.branch_local.holds
    assert not report.branch_strong.holds
    assert not report.branch_repr.holds
    assert report.consistent.holds


def test_classify_k61(k61):
    report = classify_local_retractive(k61, BUDGET)
    assert report.branch_local.holds
    assert report.branch_strong.holds
    assert report.branch_repr.holds
    assert report.consistent.holds
    assert "zero tail" in report.head_description


def test_classify_finite(c4, b4, finite_fixtures):
    rep = classify_local_retractive(c4, BUDGET)
    assert rep.branch_local.holds and rep.branch_strong.holds
    assert rep.consistent.holds
    rep = classify_local_retractive(b4, BUDGET)
    assert not rep.branch_local.holds
    assert not rep.branch_strong.holds
    assert rep.consistent.holds
    for E in finite_fixtures.values():
        assert classify_local_retractive(E, BUDGET).consistent.kind \
            != "refuted"


# -- subdirect ----------------------------------------------------------------------

def test_subdirect_b4(b4):
    res = subdirect_decompose(b4)
    assert res.verdict.holds
    assert len(res.primes) == 2
    assert all(q.algebra.n == 2 for q in res.quotients)
    seen = {res.embed(x) for x in b4.elements()}
    assert len(seen) == b4.n


def test_subdirect_chain(c4):
    res = subdirect_decompose(c4)
    assert res.verdict.holds
    assert len(res.primes) == 1
    assert res.quotients[0].algebra.n == c4.n


def test_subdirect_b22():
    b22 = fixtures.b22()
    res = subdirect_decompose(b22)
    assert res.verdict.holds
    assert len(res.primes) == 2


def test_subdirect_all_rdp_fixtures(finite_fixtures):
    for name, E in finite_fixtures.items():
        if not check_rdp(E).holds:
            continue
        res = subdirect_decompose(E)
        assert res.verdict.holds, name


def test_subdirect_rejects_non_rdp(hs4):
    with pytest.raises(UnsupportedOperationError):
        subdirect_decompose(hs4)


# -- the zero-fiber ideal of a lex host is lexicographic ------------------------------

def test_canonical_ideal_lexicographic(lex1, lex3):
    for E in (lex1, lex3):
        assert is_lexicographic(E, canonical_fiber_ideal(E, 1), BUDGET).holds
