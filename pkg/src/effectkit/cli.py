"""Command-line entry points.

Commands: check, rdp, ideals, states, decompose, represent, subdirect,
classify. Each reads an `.ea` document, runs the corresponding module
operations, and emits a report as human text (default) or JSON
(``--json``). Reports are byte-identical for identical inputs and seed;
wall-clock timing is only added under ``--timing``.

Exit codes: 0 when every asserted property holds, 1 when a violation
was found, 2 when some verdict is unknown after budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import effalg, fileio, ideals, lexrep, lindsl, pogroup, states
from .effalg import FiniteEffectAlgebra, IntervalEffectAlgebra
from .errors import EffectKitError
from .pogroup import ConePoGroup, ProductCone
from .vecs import Vec, rat_str
from .verdicts import Budget, Verdict

F = Fraction


@dataclass
class Report:
    """Asserted items gate the exit code; descriptive items are findings
    about the input (a non-unique state is information, not a failure)."""

    command: str
    inputs: dict
    items: list[tuple[str, object, bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: Optional[float] = None

    def add(self, name: str, verdict, asserted: bool = True) -> None:
        self.items.append((name, verdict, asserted))

    def describe(self, name: str, verdict) -> None:
        self.items.append((name, verdict, False))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def exit_code(self) -> int:
        kinds = {v.kind for _, v, asserted in self.items
                 if asserted and isinstance(v, Verdict)}
        if "refuted" in kinds:
            return 1
        if "unknown" in kinds:
            return 2
        return 0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "items": [
                {"name": name, "asserted": asserted, **_verdict_json(v)}
                for name, v, asserted in self.items
            ],
            "notes": self.notes,
            "exit_code": self.exit_code(),
        }
        if self.elapsed is not None:
            payload["elapsed_seconds"] = round(self.elapsed, 3)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"effectkit {self.command} "
                 + " ".join(f"{k}={v}" for k, v in sorted(self.inputs.items()))]
        for name, v, _ in self.items:
            lines.append(f"  {name}: {_verdict_text(v)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        code = self.exit_code()
        status = {0: "ok", 1: "violation", 2: "unknown"}[code]
        lines.append(f"RESULT: {status} (exit {code})")
        if self.elapsed is not None:
            lines.append(f"timing: {self.elapsed:.3f}s")
        return "\n".join(lines) + "\n"


def _verdict_json(v) -> dict:
    if isinstance(v, Verdict):
        out = {"verdict": v.kind}
        if v.reason:
            out["reason"] = v.reason
        if v.witness is not None:
            out["witness"] = _show(v.witness)
        if v.budget is not None:
            out["budget"] = {"window": v.budget.window,
                             "samples": v.budget.samples,
                             "seed": v.budget.seed}
        return out
    return {"value": _show(v)}


def _verdict_text(v) -> str:
    if isinstance(v, Verdict):
        return v.describe()
    return _show(v)


def _show(value) -> str:
    if isinstance(value, Vec):
        return str(value)
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_show(v) for v in value) + ")"
    if isinstance(value, frozenset):
        return "{" + ", ".join(sorted(_show(v) for v in value)) + "}"
    return str(value)


def _ideal_label(E, I) -> str:
    if isinstance(I, ideals.FiniteIdeal):
        return "{" + ", ".join(E.labels[i] for i in I.sorted()) + "}"
    return I.label or lindsl.emit_formula(I.predicate)


# ---------------------------------------------------------------------------
# Commands


def cmd_check(E, report: Report, budget: Budget) -> None:
    if isinstance(E, FiniteEffectAlgebra):
        report.add("axioms", effalg.verify_axioms(E))
        return
    report.add("cone-axioms", pogroup.check_cone_axioms(E.group, budget))
    report.add("strong-unit", pogroup.check_strong_unit(E.group, budget))
    if E.head_rank is not None:
        report.note(f"declared lexicographic split after coordinate"
                    f" {E.head_rank}")


def cmd_rdp(E, report: Report, budget: Budget) -> None:
    report.add("rdp", effalg.check_rdp(E, budget))


def cmd_ideals(E, report: Report, budget: Budget) -> None:
    if isinstance(E, FiniteEffectAlgebra):
        found = ideals.all_ideals(E)
        report.note(f"{len(found)} ideals: "
                    + "; ".join(_ideal_label(E, I) for I in found))
        maxima = ideals.maximal_ideals(E)
        report.note("maximal: "
                    + "; ".join(_ideal_label(E, I) for I in maxima))
        primes = [I for I in found
                  if len(I.elements) < E.n
                  and ideals.is_prime_ideal(E, I).holds]
        report.note("prime: " + "; ".join(_ideal_label(E, I) for I in primes))
        rad = ideals.radical(E)
        report.note("radical: " + _ideal_label(E, rad))
        report.describe("local", _bool_verdict(ideals.is_local(E)))
        report.describe("simple", ideals.is_simple(E))
        if effalg.check_rdp(E).holds:
            inf = effalg.infinitesimals(E)
            ok = inf <= rad.elements
            report.add("infinitesimals-inside-radical", _bool_verdict(ok))
        return
    candidates = [ideals.zero_ideal(E)] + ideals.canonical_ideals(E)
    for I in candidates:
        name = _ideal_label(E, I)
        rep = ideals.lexicographic_report(E, I, budget)
        report.add(f"[{name}] ideal", ideals.is_ideal(E, I, budget))
        report.describe(f"[{name}] strict", rep.strict)
        report.describe(f"[{name}] retractive", rep.retractive)
        report.describe(f"[{name}] prime", rep.prime)
        report.describe(f"[{name}] lexicographic", rep.verdict)
    largest = ideals.largest_strict_ideal(E, budget=budget)
    if largest.weak:
        report.note("largest strict ideal: {0} only, in the weak reading"
                    " that admits the zero ideal")
    elif largest.ideal is not None:
        report.note("largest strict ideal: " + _ideal_label(E, largest.ideal))
    report.add("strict-ideals-chain", largest.chain_ok)
    loc = ideals.local_and_radical(E, budget)
    report.describe("local", loc.local)
    if loc.radical is not None:
        report.note("radical: " + _ideal_label(E, loc.radical))
    report.describe("simple", ideals.is_simple(E, budget))


def _bool_verdict(flag: bool) -> Verdict:
    from .verdicts import proved, refuted
    return proved() if flag else refuted()


def cmd_states(E, report: Report, budget: Budget) -> None:
    if isinstance(E, FiniteEffectAlgebra):
        feasible = states.state_feasible(E)
        report.add("state-exists", _bool_verdict(feasible is not None))
        if feasible is None:
            report.note("no state: the additivity system is infeasible")
            return
        for a in E.elements():
            lo, hi = states.state_extremes(E, a)
            report.note(f"extremes s({E.labels[a]}) in"
                        f" [{rat_str(lo)}, {rat_str(hi)}]")
        rep = states.unique_state(E)
        report.describe("unique-state", rep.verdict)
        if rep.state is not None:
            report.note("state: " + ", ".join(
                f"s({E.labels[i]})={rat_str(v)}"
                for i, v in enumerate(rep.state.values)))
        return
    rep = states.unique_state(E, budget)
    report.describe("unique-state", rep.verdict)
    if rep.state is not None:
        report.note("state row: ("
                    + ", ".join(rat_str(c) for c in rep.state.row) + ")")
        report.add("zero-fiber-vanishing",
                   states.check_zero_fiber_vanishing(E, rep.state, budget))
        report.add("state-conditions",
                   states.verify_state(E, rep.state, budget))


def _parse_head_spec(spec: str) -> ConePoGroup:
    group, _, unit = spec.partition(":")
    group = group.strip().upper()
    if not unit:
        raise EffectKitError(f"head spec {spec!r} needs GROUP:UNIT")
    if group == "Z":
        rank = 1
    elif group.startswith("Z^"):
        rank = int(group[2:])
    else:
        raise EffectKitError(f"unsupported head group {group!r}")
    coords = [int(v) for v in unit.split(",")]
    if len(coords) != rank:
        raise EffectKitError("unit length differs from head rank")
    return ConePoGroup(rank, ProductCone(rank), unit=Vec.of(*coords))


def cmd_decompose(E, report: Report, budget: Budget,
                  head: Optional[str]) -> None:
    if isinstance(E, FiniteEffectAlgebra):
        if head is None:
            raise EffectKitError("finite hosts need --head GROUP:UNIT")
        target = _parse_head_spec(head)
        s = states.search_valued_state(E, target)
        report.add("valued-state-found", _bool_verdict(s is not None))
        if s is None:
            return
        report.note("assignment: " + ", ".join(
            f"{E.labels[i]}->{v}" for i, v in enumerate(s.table)))
        D = states.hu_state_to_decomposition(E, s)
    else:
        s = states.projection_hu_state(E)
        report.add("valued-state", states.hu_state_valued(E, s, budget))
        D = states.hu_state_to_decomposition(E, s)
    report.add("decomposition-valid",
               states.validate_decomposition(E, D, budget))
    ordered = lexrep.is_ordered_decomposition(E, D, budget)
    report.add("ordered-fiber-criterion", ordered.fiber_order)
    report.add("ordered-sum-criterion", ordered.sum_existence)
    report.add("criteria-agree", ordered.agree)
    report.note(f"pairs checked: {ordered.pairs_checked}")
    report.add("directed", lexrep.is_directed_decomposition(E, D, budget))
    if ordered.verdict.holds:
        for name, v in lexrep.ordered_decomposition_consequences(E, D,
                                                                 budget):
            report.add(name, v)


def cmd_represent(E, report: Report, budget: Budget) -> None:
    if isinstance(E, FiniteEffectAlgebra):
        if E.coords is None:
            raise EffectKitError(
                "finite hosts represent through their coordinate data;"
                " this table has none")
        rank = E.coords[0].rank
        target = ConePoGroup(rank, ProductCone(rank), unit=E.coords[E.one])
        D = states.HuDecomposition(target=target, assign=E.coords)
        fam_v, fam = lexrep.find_strong_family(E, D, budget)
        report.add("strong-family", fam_v)
        if fam is None:
            return
        rep = lexrep.represent(E, D, fam, budget)
        for name, v in rep.checks:
            report.add(name, v)
        report.note(f"head: rank {rep.head.rank}, unit {rep.head.unit};"
                    f" tail: rank {rep.tail.rank}")
        return
    attempt = lexrep.represent_canonical(E, budget)
    report.add("ordered", attempt.ordered.verdict)
    report.add("directed", attempt.directed)
    report.add("strong-family", attempt.family_verdict)
    if attempt.family is not None:
        section = ", ".join(f"c{_show(t)}={_show(c)}"
                            for t, c in attempt.family.entries)
        report.note("section: " + section)
    if attempt.representation is not None:
        for name, v in attempt.representation.checks:
            report.add(name, v)
        rep = attempt.representation
        report.note(f"head: rank {rep.head.rank}, unit {rep.head.unit};"
                    f" tail: rank {rep.tail.rank},"
                    f" cone {fileio.emit_cone(rep.tail.cone)}")


def cmd_subdirect(E, report: Report, budget: Budget) -> None:
    if isinstance(E, IntervalEffectAlgebra):
        raise EffectKitError(
            "subdirect decomposition needs a finite carrier")
    res = lexrep.subdirect_decompose(E, budget)
    report.note(f"{len(res.primes)} proper prime ideals: " + "; ".join(
        _ideal_label(E, P) for P in res.primes))
    report.add("intersection-trivial", res.intersection_trivial)
    report.add("order-embedding", res.order_embedding)
    report.add("projections-surjective", res.projections_surjective)
    report.add("factors-antilattice", res.factors_antilattice)
    report.add("bounds-preserved", res.bounds_preserved)
    for P, q in zip(res.primes, res.quotients):
        report.note(f"factor by {_ideal_label(E, P)}:"
                    f" {q.algebra.n} classes")


def cmd_classify(E, report: Report, budget: Budget) -> None:
    cls = effalg.classify_order(E, budget)
    report.describe("lattice", cls.lattice)
    report.describe("antilattice", cls.antilattice)
    report.describe("linear", cls.linear)
    report.describe("mv", cls.mv)
    report.describe("archimedean", effalg.is_archimedean(E, budget))
    rep = lexrep.classify_local_retractive(E, budget)
    report.describe("local", rep.local)
    report.describe("radical-strict", rep.radical_strict)
    report.describe("radical-retractive", rep.radical_retractive)
    report.describe("head-antilattice", rep.head_antilattice)
    report.describe("head-simple", rep.head_simple)
    report.describe("head-interval-archimedean", rep.head_archimedean)
    report.describe("branch-local-retractive", rep.branch_local)
    report.describe("branch-strong-decomposition", rep.branch_strong)
    report.describe("branch-representation", rep.branch_repr)
    report.add("branches-consistent", rep.consistent)
    report.note("head: " + rep.head_description)
    if isinstance(E, FiniteEffectAlgebra):
        report.describe("simple", ideals.is_simple(E))
    else:
        report.describe("simple", ideals.is_simple(E, budget))


COMMANDS = {
    "check": cmd_check,
    "rdp": cmd_rdp,
    "ideals": cmd_ideals,
    "states": cmd_states,
    "represent": cmd_represent,
    "subdirect": cmd_subdirect,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effectkit",
        description="Effect algebras: verification, ideals, states, and"
                    " lexicographic-product representations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "rdp", "ideals", "states", "decompose",
                 "represent", "subdirect", "classify"):
        p = sub.add_parser(name)
        p.add_argument("file", help="algebra document (.ea)")
        p.add_argument("--window", type=int, default=5,
                       help="coordinate window for bounded searches")
        p.add_argument("--samples", type=int, default=200,
                       help="sample budget for probabilistic checks")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for deterministic sampling")
        p.add_argument("--json", action="store_true",
                       help="emit the machine-readable report")
        p.add_argument("--timing", action="store_true",
                       help="append wall-clock timing (breaks byte-level"
                            " determinism)")
        if name == "decompose":
            p.add_argument("--head", default=None,
                           help="head group for finite hosts, e.g. Z:2 or"
                                " Z^2:1,1")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    budget = Budget(window=args.window, samples=args.samples,
                    seed=args.seed)
    report = Report(command=args.command,
                    inputs={"file": args.file, "window": args.window,
                            "samples": args.samples, "seed": args.seed})
    start = time.monotonic()
    try:
        E = fileio.load_algebra(args.file)
        if args.command == "decompose":
            cmd_decompose(E, report, budget, args.head)
        else:
            COMMANDS[args.command](E, report, budget)
    except EffectKitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    if args.timing:
        report.elapsed = time.monotonic() - start
    out = report.to_json() if args.json else report.to_text()
    sys.stdout.write(out)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
