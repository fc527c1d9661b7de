"""The acceptance suite.

Each criterion prints one PASS/FAIL line (run with ``pytest -s`` to see
them live) and asserts its claims at the stated budgets, so the ordinary
test run enforces everything.
"""

import io
import itertools
import pathlib
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

import oracles
from effectkit import fixtures, lindsl
from effectkit.cli import main as cli_main
from effectkit.effalg import (check_rdp, classify_order, enumerate_algebra,
                              infinitesimals, sample_carrier, verify_axioms)
from effectkit.fileio import document_of, emit_document, parse_document
from effectkit.ideals import (all_ideals, canonical_fiber_ideal,
                              canonical_ideals, coordinate_ideal,
                              full_ideal, generated_ideal, ideal_leq,
                              is_ideal, is_lexicographic, is_retractive,
                              is_riesz, is_simple, is_strict,
                              largest_strict_ideal, lexicographic_report,
                              local_and_radical, quotient, radical,
                              zero_ideal)
from effectkit.lexrep import (canonical_decomposition,
                              classify_local_retractive, find_strong_family,
                              is_directed_decomposition,
                              is_ordered_decomposition,
                              ordered_decomposition_consequences,
                              quotient_head_iso, represent,
                              represent_canonical, subdirect_decompose)
from effectkit.morphisms import (has_sim_property, is_full, iso_search,
                                 projection_hom)
from effectkit.pogroup import ConePoGroup, ProductCone
from effectkit.states import (HuDecomposition, decomposition_to_hu_state,
                              finite_hu_state, hu_state_to_decomposition,
                              hu_state_valued, projection_hu_state,
                              state_extremes, unique_state)
from effectkit.vecs import Vec
from effectkit.verdicts import Budget

F = Fraction
FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

FINITE = fixtures.finite_catalog()
LEX1 = fixtures.lex1()
LEX21 = fixtures.lex21()
LEX3 = fixtures.lex3()
SQ = fixtures.sq()
K61 = fixtures.k61()


def record(num: int, description: str, passed: bool) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {num:2d}: {status} - {description}")
    assert passed, f"criterion {num}: {description}"


def _identity_decomposition(E):
    rank = E.coords[0].rank
    target = ConePoGroup(rank, ProductCone(rank), unit=E.coords[E.one])
    return HuDecomposition(target=target, assign=E.coords)


def test_criterion_01_axioms_and_rdp_oracle():
    ok = True
    for name, E in FINITE.items():
        ok &= verify_axioms(E).holds
        if E.n <= 12:
            want, _ = oracles.rdp_oracle(E)
            ok &= check_rdp(E).holds == want
    hs4 = FINITE["HS4"]
    v = check_rdp(hs4)
    ok &= v.kind == "refuted" and v.witness is not None
    record(1, "axioms pass on all finite fixtures; RDP matches the"
              " brute-force oracle (n <= 12); HS4 refuted", ok)


def test_criterion_02_generated_ideals():
    ok = True
    for name, E in FINITE.items():
        for x in E.elements():
            got = generated_ideal(E, {x}).elements
            want = oracles.ideal_closure_oracle(E, {x})
            ok &= got == want
    record(2, "generated ideals equal the fixpoint-closure oracle for"
              " every singleton on every finite fixture", ok)


def test_criterion_03_infinitesimals_inside_radical():
    ok = True
    for name, E in FINITE.items():
        if not check_rdp(E).holds:
            continue
        ok &= infinitesimals(E) <= radical(E).elements
    inf = infinitesimals(LEX1)
    ok &= lindsl.holds(inf, Vec.of(0, 3)) and not lindsl.holds(
        inf, Vec.of(1, 0))
    rad = local_and_radical(LEX1, Budget(samples=100, seed=3)).radical
    ok &= rad is not None and lindsl.feasible(
        lindsl.conj(inf, lindsl.negate(rad.predicate)), 2) is None
    record(3, "Infin(E) inside Rad(E) on finite RDP fixtures; on LEX1 the"
              " infinitesimals are the zero fiber inside the radical", ok)


def test_criterion_04_lex3_lexicographic_ideals():
    budget = Budget(window=3, samples=80, seed=4)
    candidates = [zero_ideal(LEX3)] + canonical_ideals(LEX3) \
        + [full_ideal(LEX3)]
    passing = [I for I in candidates
               if is_lexicographic(LEX3, I, budget).holds]
    ok = len(passing) == 2
    ok &= sorted(I.split for I in passing) == [1, 2]
    inner = next(I for I in passing if I.split == 2)
    outer = next(I for I in passing if I.split == 1)
    ok &= ideal_leq(LEX3, inner, outer) is True
    ok &= inner.contains(LEX3, Vec.of(0, 0, 5))
    ok &= outer.contains(LEX3, Vec.of(0, 2, -7))
    ok &= not inner.contains(LEX3, Vec.of(0, 2, -7))
    record(4, "exactly the two nested zero-fiber ideals of LEX3 are"
              " lexicographic, and they form a chain", ok)


def test_criterion_05_counterexamples():
    budget = Budget(window=3, samples=120, seed=5)
    v, section = is_retractive(LEX21, canonical_fiber_ideal(LEX21, 1))
    ok = v.kind == "refuted" and section is None
    ok &= "2*c" in v.reason and "no solution" in v.reason
    nontrivial = [coordinate_ideal(SQ, frozenset({0})),
                  coordinate_ideal(SQ, frozenset({1}))]
    for I in nontrivial:
        ok &= is_ideal(SQ, I).holds
        ok &= is_strict(SQ, I, budget).kind == "refuted"
    ok &= largest_strict_ideal(SQ, budget=budget).weak
    record(5, "LEX21's nontrivial ideal fails retractivity with a"
              " divisibility certificate; SQ has no strict nontrivial"
              " ideal", ok)


def test_criterion_06_state_decomposition_bijection():
    ok = True
    for E in (LEX1, LEX21, LEX3):
        s = projection_hu_state(E)
        D = hu_state_to_decomposition(E, s)
        ok &= decomposition_to_hu_state(E, D) == s
        ok &= hu_state_to_decomposition(
            E, decomposition_to_hu_state(E, D)) == D
    for name in ("C2", "C3", "C4", "B4", "B22"):
        E = FINITE[name]
        rank = E.coords[0].rank
        target = ConePoGroup(rank, ProductCone(rank), unit=E.coords[E.one])
        s = finite_hu_state(E, target, E.coords)
        ok &= hu_state_valued(E, s).holds
        D = hu_state_to_decomposition(E, s)
        ok &= decomposition_to_hu_state(E, D) == s
        ok &= hu_state_to_decomposition(
            E, decomposition_to_hu_state(E, D)) == D
    record(6, "state-to-decomposition round trips are identities on every"
              " fixture with a valued group-state", ok)


def test_criterion_07_ordered_criteria_agree():
    budget = Budget(window=4, samples=440, seed=7)
    ok = True
    for E in (LEX1, LEX21, LEX3):
        D = canonical_decomposition(E)
        rep = is_ordered_decomposition(E, D, budget)
        ok &= rep.fiber_order.holds and rep.sum_existence.holds
        ok &= rep.agree.holds and rep.pairs_checked >= 200
        consequences = dict(ordered_decomposition_consequences(E, D, budget))
        ok &= consequences["middle-sums"].holds
        ok &= consequences["over-unit-sums"].holds
    record(7, "both orderedness criteria agree on 200+ sampled pairs per"
              " lex fixture; fiber sums are exact and over-unit sums are"
              " refuted", ok)


def test_criterion_08_quotient_head_isomorphisms():
    res1 = quotient_head_iso(LEX1, canonical_decomposition(LEX1))
    ok = res1.verdict.holds and res1.quotient_algebra.n == 2
    ok &= iso_search(res1.quotient_algebra, fixtures.chain(1)) is not None
    res2 = quotient_head_iso(LEX21, canonical_decomposition(LEX21))
    ok &= res2.verdict.holds and res2.quotient_algebra.n == 3
    ok &= iso_search(res2.quotient_algebra, fixtures.chain(2)) is not None
    record(8, "quotients by the zero fiber match the head intervals:"
              " LEX1 gives the 2-chain, LEX21 the 3-chain", ok)


def test_criterion_09_unique_states():
    budget = Budget(window=4, samples=200, seed=9)
    ok = True
    for E, expected in ((LEX1, {0: F(0), 1: F(1)}),
                        (LEX21, {0: F(0), 1: F(1, 2), 2: F(1)})):
        rep = unique_state(E, budget)
        ok &= rep.verdict.holds
        pool = sample_carrier(E, __import__("random").Random(9), 200, 4)
        ok &= len(pool) >= 200
        for x in pool:
            ok &= rep.state(x) == expected[int(x.coords[0])]
    b4 = FINITE["B4"]
    lo, hi = state_extremes(b4, b4.label_index("a"))
    ok &= (lo, hi) == (F(0), F(1))
    ok &= not unique_state(b4).verdict.holds
    record(9, "LEX1 and LEX21 have unique states depending only on the"
              " head on 200 samples; B4 is non-unique with extremes 0, 1",
           ok)


def test_criterion_10_representation_round_trips():
    budget = Budget(window=4, samples=200, seed=10)
    ok = True
    for E, tail_rank in ((LEX1, 1), (LEX3, 2)):
        attempt = represent_canonical(E, budget)
        ok &= attempt.verdict.holds
        rep = attempt.representation
        ok &= rep.tail.rank == tail_rank
        checks = dict(rep.checks)
        ok &= checks["bijection"].holds and checks["additivity"].holds
    attempt = represent_canonical(LEX21, budget)
    ok &= attempt.verdict.kind == "refuted"
    ok &= "no solution" in attempt.verdict.reason
    record(10, "representations verified bidirectionally on 200 samples"
               " for LEX1 (tail Z) and LEX3 (tail Z lex Z); LEX21 fails"
               " with a certificate", ok)


def test_criterion_11_classification_consistency():
    budget = Budget(window=3, samples=100, seed=11)
    rep1 = classify_local_retractive(LEX1, budget)
    ok = rep1.branch_local.holds and rep1.branch_strong.holds \
        and rep1.branch_repr.holds
    rep21 = classify_local_retractive(LEX21, budget)
    ok &= rep21.branch_local.kind == "refuted"
    fam_v, fam = find_strong_family(
        LEX21, canonical_decomposition(LEX21), budget)
    ok &= fam_v.kind == "refuted" and fam is None
    everything = list(FINITE.values()) + [LEX1, LEX21, LEX3, K61]
    for E in everything:
        ok &= classify_local_retractive(E, budget).consistent.kind \
            != "refuted"
    record(11, "all three branches hold on LEX1; branch (i) fails on"
               " LEX21 with no strong family; decidable branches never"
               " disagree", ok)


def test_criterion_12_antilattice_simple_host():
    budget = Budget(window=2, samples=80, seed=12)
    cls = classify_order(K61, budget)
    ok = cls.antilattice.holds and cls.antilattice.budget is not None
    ok &= cls.lattice.kind == "refuted"
    ok &= is_simple(K61, budget).holds
    ok &= check_rdp(K61, budget).holds
    record(12, "the custom-cone rational plane is a simple antilattice"
               " with windowed RDP but not a lattice", ok)


def test_criterion_13_subdirect_products():
    ok = True
    for name, E in FINITE.items():
        if not check_rdp(E).holds:
            continue
        res = subdirect_decompose(E)
        ok &= res.intersection_trivial.holds
        ok &= res.order_embedding.holds
        ok &= res.projections_surjective.holds
        ok &= res.factors_antilattice.holds
        ok &= res.bounds_preserved.holds
    record(13, "every finite RDP fixture embeds subdirectly into its"
               " antilattice prime quotients, preserving order, meets,"
               " and joins", ok)


def test_criterion_14_kernel_witness_and_fullness():
    ok = True
    for name, E in FINITE.items():
        for I in all_ideals(E):
            riesz = is_riesz(E, I)
            if not riesz.holds:
                continue
            q = quotient(E, I, riesz)
            h = projection_hom(E, q)
            ok &= has_sim_property(h).holds
            ok &= is_full(h).holds
            if check_rdp(E).holds:
                ok &= check_rdp(q.algebra).holds
    record(14, "projections by Riesz ideals have kernel witnesses, are"
               " full, and quotients inherit RDP", ok)


def _run_cli(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def test_criterion_15_cli_determinism_and_round_trips():
    ok = True
    for path in sorted(FIXDIR.glob("*.ea")):
        text = path.read_text(encoding="utf-8")
        doc = parse_document(text)
        ok &= emit_document(doc) == text
        ok &= parse_document(emit_document(doc)) == doc
    commands = [
        ("check", str(FIXDIR / "K61.ea"), "--samples", "40",
         "--window", "2", "--seed", "3"),
        ("represent", str(FIXDIR / "LEX3.ea"), "--samples", "60",
         "--window", "3", "--seed", "3", "--json"),
        ("classify", str(FIXDIR / "K61.ea"), "--samples", "60",
         "--window", "2", "--seed", "3", "--json"),
        ("ideals", str(FIXDIR / "LEX21.ea"), "--samples", "60",
         "--window", "3", "--seed", "3"),
    ]
    for args in commands:
        code1, out1 = _run_cli(*args)
        code2, out2 = _run_cli(*args)
        ok &= code1 == code2 and out1 == out2
    record(15, "fixture documents round-trip through parse and emit;"
               " repeated seeded CLI runs are byte-identical", ok)
