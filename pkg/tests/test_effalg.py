from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from effectkit import effalg, fixtures
from effectkit.effalg import (FiniteEffectAlgebra, check_rdp, classify_order,
                              enumerate_algebra, infinitesimals,
                              interval_algebra, is_archimedean,
                              sample_carrier, verify_axioms)
from effectkit.errors import (CarrierError, NotEnumerableError,
                              UndefinedSumError)
from effectkit.lindsl import holds
from effectkit.vecs import Vec
from effectkit.verdicts import Budget

F = Fraction
BUDGET = Budget(window=3, samples=80, seed=11)


def test_axioms_on_catalog(finite_fixtures):
    for name, E in finite_fixtures.items():
        assert verify_axioms(E).holds, name


def test_axioms_catch_double_complement():
    # b has two complements: a and b
    U = None
    table = (
        (0, 1, 2, 3),
        (1, U, 3, U),
        (2, 3, 3, U),
        (3, U, U, U),
    )
    E = FiniteEffectAlgebra(("0", "a", "b", "1"), table, 0, 1)
    bad = verify_axioms(E)
    assert not bad.holds


def test_axioms_catch_missing_zero_row():
    U = None
    table = ((U, 1), (1, U))
    E = FiniteEffectAlgebra(("0", "1"), table, 0, 1)
    assert verify_axioms(E).kind == "refuted"


def test_induced_order_chain(c4):
    one_ = c4.label_index("1")
    three = c4.label_index("3")
    assert c4.leq(one_, three)
    assert c4.labels[c4.minus(three, one_)] == "2"
    assert c4.complement(c4.zero) == c4.one


def test_minus_incomparable(b4):
    a, b = b4.label_index("a"), b4.label_index("b")
    assert not b4.leq(a, b) and not b4.leq(b, a)
    with pytest.raises(UndefinedSumError):
        b4.minus(b, a)


def test_complement_involution(finite_fixtures):
    for E in finite_fixtures.values():
        for x in E.elements():
            assert E.complement(E.complement(x)) == x


def test_sum_defined_iff_below_complement(finite_fixtures):
    for E in finite_fixtures.values():
        for a in E.elements():
            for b in E.elements():
                assert E.defined(a, b) == E.leq(a, E.complement(b))


def test_minus_recovers(finite_fixtures):
    for E in finite_fixtures.values():
        for a in E.elements():
            for b in E.elements():
                if E.lt(a, b) or a == b:
                    c = E.minus(b, a)
                    assert E.add(a, c) == b


def test_enumerate_round_trip():
    E = interval_algebra(fixtures.int_group(1, Vec.of(4)))
    table = enumerate_algebra(E)
    assert table.n == 5
    assert verify_axioms(table).holds
    # induced order equals the cone order restricted to the carrier
    for i, v in enumerate(table.coords):
        for j, w in enumerate(table.coords):
            assert table.leq(i, j) == E.leq(v, w)


def test_enumerate_b4():
    table = enumerate_algebra(interval_algebra(
        fixtures.int_group(2, Vec.of(1, 1))))
    assert table.n == 4
    assert verify_axioms(table).holds


def test_enumerate_refuses_lex(lex1):
    assert not lex1.enumerable
    with pytest.raises(NotEnumerableError):
        enumerate_algebra(lex1)


def test_interval_algebra_rejects_bad_unit():
    with pytest.raises(CarrierError):
        interval_algebra(fixtures.int_group(2), Vec.of(1, -1))


def test_rdp_matches_oracle(finite_fixtures):
    for name, E in finite_fixtures.items():
        want, counter = oracles.rdp_oracle(E)
        got = check_rdp(E)
        assert got.holds == want, name


def test_rdp_hs4_counterexample(hs4):
    v = check_rdp(hs4)
    assert v.kind == "refuted"
    assert set(v.witness) == {"a", "b"} or v.witness is not None


def test_rdp_windowed_lex3(lex3):
    v = check_rdp(lex3, BUDGET)
    assert v.holds


def test_rdp_windowed_k61(k61):
    v = check_rdp(k61, Budget(window=2, samples=40, seed=3))
    assert v.holds


def test_classify_chain(c4):
    cls = classify_order(c4)
    assert cls.linear.holds and cls.lattice.holds and cls.antilattice.holds
    assert cls.mv.holds and cls.mv_table is not None


def test_classify_b4(b4):
    cls = classify_order(b4)
    assert cls.lattice.holds
    assert not cls.antilattice.holds
    assert not cls.linear.holds
    assert cls.mv.holds


def test_classify_hs4(hs4):
    cls = classify_order(hs4)
    assert cls.lattice.holds
    assert not cls.antilattice.holds
    assert not cls.mv.holds


def test_lattice_and_antilattice_imply_linear(finite_fixtures):
    for E in finite_fixtures.values():
        cls = classify_order(E)
        assert cls.linear.holds == (cls.lattice.holds and cls.antilattice.holds)


def _mv_axioms(E, table):
    comp = E.complements
    for x in E.elements():
        assert comp[comp[x]] == x
        assert table[x][E.one] == E.one
    assert comp[E.zero] == E.one
    for x in E.elements():
        for y in E.elements():
            assert table[x][y] == table[y][x]
            lhs = table[x][comp[table[x][comp[y]]]]
            rhs = table[y][comp[table[y][comp[x]]]]
            assert lhs == rhs
            for z in E.elements():
                assert table[table[x][y]][z] == table[x][table[y][z]]


def test_mv_truncation_satisfies_mv_axioms(finite_fixtures):
    for E in finite_fixtures.values():
        cls = classify_order(E)
        if cls.mv_table is not None:
            _mv_axioms(E, cls.mv_table)


def test_classify_sq(sq):
    cls = classify_order(sq, BUDGET)
    assert cls.lattice.holds
    assert not cls.antilattice.holds
    assert not cls.linear.holds


def test_classify_k61(k61):
    cls = classify_order(k61, Budget(window=2, samples=60, seed=5))
    assert cls.antilattice.holds
    assert cls.antilattice.budget is not None
    assert cls.lattice.kind == "refuted"
    assert not cls.linear.holds


def test_infinitesimals_finite(finite_fixtures):
    for E in finite_fixtures.values():
        inf = infinitesimals(E)
        assert inf == frozenset({E.zero})
        for a in E.elements():
            assert oracles.infinitesimal_oracle(E, a) == (a in inf)
        assert is_archimedean(E).holds


def test_infinitesimals_lex1(lex1):
    pred = infinitesimals(lex1)
    assert holds(pred, Vec.of(0, 5))
    assert holds(pred, Vec.of(0, 0))
    assert not holds(pred, Vec.of(1, 0))
    assert not holds(pred, Vec.of(0, -1))
    v = is_archimedean(lex1)
    assert v.kind == "refuted"


def test_archimedean_sq_k61(sq, k61):
    assert is_archimedean(sq).holds
    assert is_archimedean(k61, BUDGET).holds


def test_sample_carrier_stays_inside(lex21):
    import random
    pool = sample_carrier(lex21, random.Random(4), 60, 4)
    assert pool
    for v in pool:
        assert lex21.contains(v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(-5, 5), st.integers(0, 4),
       st.integers(-5, 5))
def test_lex21_sum_definition(h1, g1, h2, g2):
    E = fixtures.lex21()
    a, b = Vec.of(h1, g1), Vec.of(h2, g2)
    if E.contains(a) and E.contains(b):
        assert E.defined(a, b) == E.leq(a, E.complement(b))
