from fractions import Fraction

import pytest

import oracles
from effectkit import fixtures, ideals, lindsl
from effectkit.effalg import check_rdp, classify_order, infinitesimals
from effectkit.errors import NotRieszError, UnsupportedOperationError
from effectkit.ideals import (FiniteIdeal, LargestStrict, SymbolicIdeal,
                              all_ideals, canonical_fiber_ideal,
                              canonical_ideals, classes_equal,
                              coordinate_ideal, generated_ideal, ideal_leq,
                              is_ideal, is_lexicographic, is_local,
                              is_maximal_fiber, is_prime_ideal, is_riesz,
                              is_simple, is_strict, is_retractive,
                              largest_strict_ideal, lexicographic_report,
                              local_and_radical, maximal_ideals, quotient,
                              quotient_by_fiber, radical, recognize,
                              subalgebra_of_ideal, zero_ideal)
from effectkit.lindsl import holds
from effectkit.vecs import Vec
from effectkit.verdicts import Budget

F = Fraction
BUDGET = Budget(window=3, samples=60, seed=13)


def _ideal_of_labels(E, labels):
    return FiniteIdeal(frozenset(E.label_index(l) for l in labels))


# -- generation --------------------------------------------------------------

def test_generated_ideal_b4(b4):
    I = generated_ideal(b4, {b4.label_index("a")})
    assert {b4.labels[i] for i in I.elements} == {"0", "a"}


def test_generated_ideal_c4(c4):
    I = generated_ideal(c4, {c4.label_index("1")})
    assert I.elements == frozenset(c4.elements())


def test_generated_matches_closure_oracle(finite_fixtures):
    for name, E in finite_fixtures.items():
        for x in E.elements():
            got = generated_ideal(E, {x}).elements
            want = oracles.ideal_closure_oracle(E, {x})
            assert got == want, (name, E.labels[x])


def test_generated_ideal_lex1(lex1):
    I = generated_ideal(lex1, [Vec.of(0, 1)])
    assert I is not None
    assert I.contains(lex1, Vec.of(0, 5))
    assert not holds(I.predicate, Vec.of(1, 0))
    assert not holds(I.predicate, Vec.of(0, -1))


def test_generated_ideal_lex3(lex3):
    inner = generated_ideal(lex3, [Vec.of(0, 0, 1)])
    assert holds(inner.predicate, Vec.of(0, 0, 7))
    assert not holds(inner.predicate, Vec.of(0, 1, -2))
    outer = generated_ideal(lex3, [Vec.of(0, 1, 0)])
    assert holds(outer.predicate, Vec.of(0, 3, -9))
    assert holds(outer.predicate, Vec.of(0, 0, 4))
    assert not holds(outer.predicate, Vec.of(1, 0, 0))


def test_generated_ideal_k61_full(k61):
    I = generated_ideal(k61, [Vec.of("1/2", "1/3")])
    assert I is not None
    assert I.contains(k61, Vec.of(1, 1))


# -- ideal checks ------------------------------------------------------------

def test_is_ideal_finite(b4, hs4):
    good = _ideal_of_labels(b4, ["0", "a"])
    assert is_ideal(b4, good).holds
    not_down = _ideal_of_labels(b4, ["0", "1"])
    assert is_ideal(b4, not_down).kind == "refuted"
    not_sums = _ideal_of_labels(hs4, ["0", "a"])
    assert is_ideal(hs4, not_sums).kind == "refuted"


def test_is_ideal_symbolic(sq, lex1):
    I1 = coordinate_ideal(sq, frozenset({1}))
    assert is_ideal(sq, I1).holds
    raw = SymbolicIdeal(lindsl.parse_formula("x0 >= 0 & x1 = 0", 2))
    assert is_ideal(sq, raw).holds
    bad = SymbolicIdeal(lindsl.parse_formula("x0 >= 0 & x1 >= 0", 2))
    # the whole carrier is an ideal too; a genuinely bad predicate:
    notdown = SymbolicIdeal(lindsl.parse_formula("x0 > 0 & x1 > 0", 2))
    assert is_ideal(sq, notdown).kind == "refuted"
    assert is_ideal(lex1, canonical_fiber_ideal(lex1, 1)).holds


def test_riesz(finite_fixtures, hs4):
    for E in finite_fixtures.values():
        if check_rdp(E).holds:
            for I in all_ideals(E):
                assert is_riesz(E, I).holds
    assert is_riesz(hs4, zero_ideal(hs4)).holds


# -- enumeration -------------------------------------------------------------

def test_all_ideals_chain(c4):
    found = all_ideals(c4)
    assert len(found) == 2
    assert is_simple(c4).holds
    assert is_local(c4)


def test_all_ideals_b4(b4):
    found = all_ideals(b4)
    sets = {frozenset(b4.labels[i] for i in I.elements) for I in found}
    assert sets == {frozenset({"0"}), frozenset({"0", "a"}),
                    frozenset({"0", "b"}), frozenset({"0", "a", "b", "1"})}
    maxima = maximal_ideals(b4)
    assert {frozenset(b4.labels[i] for i in I.elements) for I in maxima} == \
        {frozenset({"0", "a"}), frozenset({"0", "b"})}
    assert radical(b4).elements == {b4.zero}
    assert not is_local(b4)


def test_hs4_simple(hs4):
    assert is_simple(hs4).holds
    assert radical(hs4).elements == {hs4.zero}


def test_prime_ideals_b4(b4):
    primes = [I for I in all_ideals(b4) if is_prime_ideal(b4, I).holds]
    sets = {frozenset(b4.labels[i] for i in I.elements) for I in primes}
    assert sets == {frozenset({"0", "a"}), frozenset({"0", "b"})}


def test_prime_zero_in_chain(c4):
    assert is_prime_ideal(c4, zero_ideal(c4)).holds


def test_prime_iff_antilattice_quotient(finite_fixtures):
    for name, E in finite_fixtures.items():
        if not check_rdp(E).holds:
            continue
        for I in all_ideals(E):
            if len(I.elements) == E.n:
                continue
            q = quotient(E, I)
            anti = classify_order(q.algebra).antilattice.holds
            assert is_prime_ideal(E, I).holds == anti, (name, I)


def test_infin_subset_radical(finite_fixtures):
    for E in finite_fixtures.values():
        if check_rdp(E).holds:
            assert infinitesimals(E) <= radical(E).elements


# -- quotients ---------------------------------------------------------------

def test_quotient_b4(b4):
    I = _ideal_of_labels(b4, ["0", "a"])
    q = quotient(b4, I)
    assert q.algebra.n == 2
    assert q.class_of[b4.zero] == q.algebra.zero
    assert q.class_of[b4.one] == q.algebra.one
    kernel = {i for i in b4.elements() if q.class_of[i] == q.algebra.zero}
    assert kernel == set(I.elements)


def test_quotient_preserves_rdp(finite_fixtures):
    for E in finite_fixtures.values():
        if not check_rdp(E).holds:
            continue
        for I in all_ideals(E):
            q = quotient(E, I)
            assert check_rdp(q.algebra).holds


def test_quotient_lex1(lex1):
    alg, proj = quotient_by_fiber(lex1, canonical_fiber_ideal(lex1, 1))
    assert alg.n == 2
    assert proj(Vec.of(0, 7)) == alg.zero
    assert proj(Vec.of(1, -3)) == alg.one


def test_quotient_lex21(lex21):
    alg, proj = quotient_by_fiber(lex21, canonical_fiber_ideal(lex21, 1))
    assert alg.n == 3
    assert proj(Vec.of(1, 5)) not in (alg.zero, alg.one)


def test_quotient_rejects_non_riesz(hs4):
    bad = _ideal_of_labels(hs4, ["0", "a"])
    with pytest.raises(NotRieszError):
        quotient(hs4, bad)


# -- strictness --------------------------------------------------------------

def test_zero_ideal_strict(b4, c4):
    assert is_strict(b4, zero_ideal(b4)).holds
    assert is_strict(c4, zero_ideal(c4)).holds


def test_b4_atom_ideal_not_strict(b4):
    I = _ideal_of_labels(b4, ["0", "a"])
    assert is_strict(b4, I).kind == "refuted"


def test_lex_fiber_strict(lex1, lex21, lex3):
    for E in (lex1, lex21, lex3):
        assert is_strict(E, canonical_fiber_ideal(E, 1)).kind == "proved"


def test_sq_ideals_not_strict(sq):
    for S in (frozenset({0}), frozenset({1})):
        v = is_strict(sq, coordinate_ideal(sq, S), BUDGET)
        assert v.kind == "refuted", v.describe()


# -- retractivity ------------------------------------------------------------

def test_retractive_zero_ideal(b4):
    v, section = is_retractive(b4, zero_ideal(b4))
    assert v.holds and section is not None


def test_retractive_lex1(lex1):
    v, section = is_retractive(lex1, canonical_fiber_ideal(lex1, 1))
    assert v.kind == "proved"
    assert section is not None


def test_retractive_lex21_refuted(lex21):
    v, section = is_retractive(lex21, canonical_fiber_ideal(lex21, 1))
    assert v.kind == "refuted"
    assert "2*c" in v.reason and "unsolvable" in v.reason
    assert section is None


def test_retractive_coordinate(sq):
    v, _ = is_retractive(sq, coordinate_ideal(sq, frozenset({1})))
    assert v.holds


# -- lexicographic classification --------------------------------------------

def test_lex3_two_lexicographic_ideals(lex3):
    candidates = [zero_ideal(lex3)] + canonical_ideals(lex3)
    passing = [I for I in candidates
               if is_lexicographic(lex3, I, BUDGET).holds]
    assert len(passing) == 2
    splits = sorted(I.split for I in passing)
    assert splits == [1, 2]
    inner = next(I for I in passing if I.split == 2)
    outer = next(I for I in passing if I.split == 1)
    assert ideal_leq(lex3, inner, outer) is True
    assert ideal_leq(lex3, outer, inner) is False


def test_lex21_not_lexicographic(lex21):
    rep = lexicographic_report(lex21, canonical_fiber_ideal(lex21, 1), BUDGET)
    assert rep.strict.holds and rep.prime.holds
    assert rep.retractive.kind == "refuted"
    assert not rep.verdict.holds


def test_b4_prime_not_lexicographic(b4):
    I = _ideal_of_labels(b4, ["0", "a"])
    rep = lexicographic_report(b4, I)
    assert rep.prime.holds
    assert rep.strict.kind == "refuted"
    assert not rep.verdict.holds


def test_lexicographic_in_infinitesimals(lex3):
    inf = infinitesimals(lex3)
    for I in canonical_ideals(lex3):
        if is_lexicographic(lex3, I, BUDGET).holds:
            for v in (Vec.of(0, 0, 3), Vec.of(0, 2, -1)):
                if I.contains(lex3, v):
                    assert holds(inf, v)


# -- subalgebra of an ideal ---------------------------------------------------

def test_subalgebra_c4():
    c4 = fixtures.chain(4)
    members, v = subalgebra_of_ideal(c4, zero_ideal(c4))
    assert v.holds
    assert {c4.labels[i] for i in members} == {"0", "4"}


def test_subalgebra_b4(b4):
    I = _ideal_of_labels(b4, ["0", "a"])
    members, v = subalgebra_of_ideal(b4, I)
    assert v.holds
    assert members == frozenset(b4.elements())


def test_subalgebra_lex1(lex1):
    pred, v = subalgebra_of_ideal(lex1, canonical_fiber_ideal(lex1, 1))
    assert holds(pred, Vec.of(0, 3))
    assert holds(pred, Vec.of(1, -3))
    assert not holds(pred, Vec.of(1, 2))


# -- largest strict ideal -----------------------------------------------------

def test_largest_strict_chain(c4):
    res = largest_strict_ideal(c4)
    assert res.weak
    assert res.ideal.elements == {c4.zero}


def test_largest_strict_sq(sq):
    res = largest_strict_ideal(sq, budget=BUDGET)
    assert res.weak


def test_largest_strict_lex3(lex3):
    res = largest_strict_ideal(lex3, budget=BUDGET)
    assert not res.weak
    assert res.ideal.split == 1
    assert res.chain_ok.holds


# -- recognition, locality, simplicity ----------------------------------------

def test_recognize_dense(sq):
    raw = SymbolicIdeal(lindsl.parse_formula("x1 = 0 & x0 >= 0", 2))
    got = recognize(sq, raw)
    assert got.coord_zero == frozenset({1})


def test_classes_equal_sq(sq):
    # members of the ideal vanish on coordinate 0, so classes collapse
    # the other coordinate
    I = coordinate_ideal(sq, frozenset({0}))
    assert classes_equal(sq, I, Vec.of("1/2", "1/3"),
                         Vec.of("1/2", "2/3")) is True
    assert classes_equal(sq, I, Vec.of("1/2", "1/3"),
                         Vec.of("1/4", "1/3")) is False


def test_maximal_fiber(lex1, lex21, lex3):
    assert is_maximal_fiber(lex1, canonical_fiber_ideal(lex1, 1)).holds
    assert is_maximal_fiber(lex21, canonical_fiber_ideal(lex21, 1)).holds
    deep = is_maximal_fiber(lex3, canonical_fiber_ideal(lex3, 2), BUDGET)
    assert deep.kind == "refuted"


def test_local_and_radical_lex(lex1, lex21, lex3):
    for E in (lex1, lex21, lex3):
        rep = local_and_radical(E, BUDGET)
        assert rep.local.holds
        assert rep.radical.split == 1


def test_k61_simple(k61):
    v = is_simple(k61, BUDGET)
    assert v.holds
    rep = local_and_radical(k61, BUDGET)
    assert rep.local.holds
    assert holds(rep.radical.predicate, Vec.of(0, 0))


def test_lex1_not_simple(lex1):
    v = is_simple(lex1, BUDGET)
    assert v.kind == "refuted"


def test_infin_equals_radical_lex1(lex1):
    rep = local_and_radical(lex1, BUDGET)
    inf = infinitesimals(lex1)
    assert lindsl.equivalent_on_rationals(inf, rep.radical.predicate, 2)
