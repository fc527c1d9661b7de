"""A small predicate language of linear inequalities over rational vectors.

Atoms compare an affine form ``sum(a_i * x_i) + const`` with zero using
``>``, ``>=`` or ``=``; formulas combine atoms with ``&`` and ``|``.
Cone predicates written in fixture files are homogeneous (zero constant
term); constants only arise internally when variables are substituted by
affine images during feasibility queries.

Feasibility over the rationals is decided exactly: the formula is put in
disjunctive normal form and each conjunction becomes a tiny exact LP,
with strict inequalities handled by maximizing a slack bounded by 1.
Over an integer lattice the LP answer is only an upper approximation;
callers combine it with window enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DocumentError
from .linsolve import OPTIMAL, lp_solve
from .vecs import Vec, rat_str

GT = ">"
GE = ">="
EQ = "="

_FLIP = {"<": GT, "<=": GE}


@dataclass(frozen=True)
class Atom:
    coeffs: tuple[Fraction, ...]
    rel: str
    const: Fraction = Fraction(0)

    def holds(self, v: Vec) -> bool:
        val = sum(c * x for c, x in zip(self.coeffs, v.coords)) + self.const
        if self.rel == GT:
            return val > 0
        if self.rel == GE:
            return val >= 0
        return val == 0


@dataclass(frozen=True)
class And:
    items: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Formula", ...]


Formula = Union[Atom, And, Or]

TRUE: Formula = And(())
FALSE: Formula = Or(())


def conj(*items: Formula) -> Formula:
    flat: list[Formula] = []
    for it in items:
        if isinstance(it, And):
            flat.extend(it.items)
        else:
            flat.append(it)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*items: Formula) -> Formula:
    flat: list[Formula] = []
    for it in items:
        if isinstance(it, Or):
            flat.extend(it.items)
        else:
            flat.append(it)
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def holds(f: Formula, v: Vec) -> bool:
    if isinstance(f, Atom):
        return f.holds(v)
    if isinstance(f, And):
        return all(holds(it, v) for it in f.items)
    return any(holds(it, v) for it in f.items)


def formula_rank(f: Formula) -> int:
    if isinstance(f, Atom):
        return len(f.coeffs)
    return max((formula_rank(it) for it in f.items), default=0)


def negate(f: Formula) -> Formula:
    """Complement of the described set, still inside the language."""
    if isinstance(f, Atom):
        neg = tuple(-c for c in f.coeffs)
        if f.rel == GT:
            return Atom(neg, GE, -f.const)
        if f.rel == GE:
            return Atom(neg, GT, -f.const)
        return Or((Atom(f.coeffs, GT, f.const), Atom(neg, GT, -f.const)))
    if isinstance(f, And):
        return Or(tuple(negate(it) for it in f.items))
    return And(tuple(negate(it) for it in f.items))


def zero_vec_formula(rank: int) -> Formula:
    return And(tuple(Atom(_unit(rank, i), EQ) for i in range(rank)))


def nonzero_formula(rank: int) -> Formula:
    alts = []
    for i in range(rank):
        alts.append(Atom(_unit(rank, i), GT))
        alts.append(Atom(tuple(-c for c in _unit(rank, i)), GT))
    return Or(tuple(alts))


def _unit(rank: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1 if j == i else 0) for j in range(rank))


def substitute(f: Formula, matrix: list[list[Fraction]],
               shift: list[Fraction]) -> Formula:
    """Rewrite the predicate of ``x`` as a predicate of ``y``, x = M y + d.

    ``matrix`` has one row per original variable; the result ranges over
    ``len(matrix[0])`` new variables.
    """
    if isinstance(f, Atom):
        nvars = len(matrix[0]) if matrix else 0
        coeffs = [Fraction(0)] * nvars
        const = f.const
        for ci, row, di in zip(f.coeffs, matrix, shift):
            if ci == 0:
                continue
            const += ci * di
            for j in range(nvars):
                coeffs[j] += ci * row[j]
        return Atom(tuple(coeffs), f.rel, const)
    if isinstance(f, And):
        return And(tuple(substitute(it, matrix, shift) for it in f.items))
    return Or(tuple(substitute(it, matrix, shift) for it in f.items))


def shift_vars(f: Formula, offset: int, total: int) -> Formula:
    """Re-index a rank-r predicate onto variables offset..offset+r-1 of a
    larger variable block."""
    if isinstance(f, Atom):
        coeffs = [Fraction(0)] * total
        for i, c in enumerate(f.coeffs):
            coeffs[offset + i] = c
        return Atom(tuple(coeffs), f.rel, f.const)
    if isinstance(f, And):
        return And(tuple(shift_vars(it, offset, total) for it in f.items))
    return Or(tuple(shift_vars(it, offset, total) for it in f.items))


def simplify(f: Formula) -> Formula:
    """Constant-fold trivial atoms and flatten nested connectives."""
    if isinstance(f, Atom):
        if all(c == 0 for c in f.coeffs):
            return TRUE if f.holds(Vec.zero(len(f.coeffs))) else FALSE
        return f
    items = []
    if isinstance(f, And):
        for it in f.items:
            s = simplify(it)
            if s == FALSE:
                return FALSE
            if s == TRUE:
                continue
            if isinstance(s, And):
                items.extend(s.items)
            else:
                items.append(s)
        unique = tuple(dict.fromkeys(items))
        if len(unique) == 1:
            return unique[0]
        return And(unique)
    for it in f.items:
        s = simplify(it)
        if s == TRUE:
            return TRUE
        if s == FALSE:
            continue
        if isinstance(s, Or):
            items.extend(s.items)
        else:
            items.append(s)
    unique = tuple(dict.fromkeys(items))
    if len(unique) == 1:
        return unique[0]
    return Or(unique)


def dnf(f: Formula) -> list[list[Atom]]:
    """Disjunctive normal form as a list of atom conjunctions."""
    f = simplify(f)
    if f == TRUE:
        return [[]]
    if f == FALSE:
        return []
    return _dnf(f)


def _dnf(f: Formula) -> list[list[Atom]]:
    if isinstance(f, Atom):
        return [[f]]
    if isinstance(f, Or):
        out: list[list[Atom]] = []
        for it in f.items:
            out.extend(_dnf(it))
        return out
    branches: list[list[Atom]] = [[]]
    for it in f.items:
        sub = _dnf(it)
        branches = [list(dict.fromkeys(br + s))
                    for br in branches for s in sub]
    return branches


def feasible(f: Formula, rank: int) -> Optional[Vec]:
    """An exact rational point satisfying ``f``, or None if there is none.

    Variables are unrestricted in sign; strict atoms are met with a
    positive margin found by maximizing a capped slack variable.
    """
    for branch in dnf(f):
        point = _branch_feasible(branch, rank)
        if point is not None:
            return point
    return None


def _branch_feasible(atoms: list[Atom], rank: int) -> Optional[Vec]:
    # Variables: x+ (rank), x- (rank), eps, then one surplus per inequality.
    strict = any(a.rel == GT for a in atoms)
    ncols = 2 * rank + 1
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    surplus_count = sum(1 for a in atoms if a.rel in (GT, GE))
    total = ncols + surplus_count + 1  # final +1: cap slack for eps <= 1
    sidx = ncols

    def base_row(a: Atom) -> list[Fraction]:
        row = [Fraction(0)] * total
        for i, c in enumerate(a.coeffs):
            row[i] = c
            row[rank + i] = -c
        return row

    for a in atoms:
        row = base_row(a)
        if a.rel == EQ:
            rows.append(row)
            rhs.append(-a.const)
        else:
            row[sidx] = Fraction(-1)
            if a.rel == GT:
                row[2 * rank] = Fraction(-1)
            rows.append(row)
            rhs.append(-a.const)
            sidx += 1
    cap = [Fraction(0)] * total
    cap[2 * rank] = Fraction(1)
    cap[-1] = Fraction(1)
    rows.append(cap)
    rhs.append(Fraction(1))

    cost = [Fraction(0)] * total
    cost[2 * rank] = Fraction(-1)  # maximize eps
    res = lp_solve(rows, rhs, cost)
    if res.status != OPTIMAL:
        return None
    if strict and res.x[2 * rank] <= 0:
        return None
    coords = tuple(res.x[i] - res.x[rank + i] for i in range(rank))
    return Vec(coords)


def equivalent_on_rationals(f: Formula, g: Formula, rank: int) -> bool:
    """Whether f and g describe the same subset of Q^rank (exact)."""
    return (feasible(conj(f, negate(g)), rank) is None
            and feasible(conj(g, negate(f)), rank) is None)


# ---------------------------------------------------------------------------
# Text grammar


_TOKEN = re.compile(
    r"\s*(?:(?P<num>-?\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>>=|<=|>|<|=|\+|-|\*|\(|\)|&|\|))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise DocumentError(f"bad token at column {pos + 1}: {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, tokens, rank: int):
        self.toks = tokens
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise DocumentError(f"expected {value!r} at column {pos + 1}")

    def formula(self) -> Formula:
        items = [self.conjunction()]
        while self.peek()[1] == "|":
            self.take()
            items.append(self.conjunction())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conjunction(self) -> Formula:
        items = [self.primary()]
        while self.peek()[1] == "&":
            self.take()
            items.append(self.primary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def primary(self) -> Formula:
        if self.peek()[1] == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self) -> Atom:
        coeffs = [Fraction(0)] * self.rank
        sign = Fraction(1)
        expect_term = True
        while True:
            kind, val, pos = self.peek()
            if expect_term:
                if val == "-":
                    self.take()
                    sign = -sign
                    continue
                if val == "+":
                    self.take()
                    continue
                if kind == "num":
                    self.take()
                    coeff = sign * Fraction(val)
                    k2, v2, _ = self.peek()
                    if v2 == "*":
                        self.take()
                        k3, v3, p3 = self.take()
                        if k3 != "var":
                            raise DocumentError(
                                f"expected variable at column {p3 + 1}")
                        self._add(coeffs, v3, coeff, p3)
                    else:
                        raise DocumentError(
                            f"constant term not allowed at column {pos + 1}")
                    sign = Fraction(1)
                    expect_term = False
                    continue
                if kind == "var":
                    self.take()
                    self._add(coeffs, val, sign, pos)
                    sign = Fraction(1)
                    expect_term = False
                    continue
                raise DocumentError(f"expected term at column {pos + 1}")
            if val in ("+", "-"):
                self.take()
                sign = Fraction(1) if val == "+" else Fraction(-1)
                expect_term = True
                continue
            if val in (">", ">=", "<", "<=", "="):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or Fraction(v2) != 0:
                    raise DocumentError(
                        f"atoms compare with 0 (column {p2 + 1})")
                if val in _FLIP:
                    return Atom(tuple(-c for c in coeffs), _FLIP[val])
                return Atom(tuple(coeffs), val)
            raise DocumentError(f"expected comparison at column {pos + 1}")

    def _add(self, coeffs, name: str, value: Fraction, pos: int):
        idx = int(name[1:])
        if idx >= self.rank:
            raise DocumentError(
                f"variable {name} out of range for rank {self.rank}"
                f" (column {pos + 1})")
        coeffs[idx] += value


def parse_formula(text: str, rank: int) -> Formula:
    parser = _Parser(_tokenize(text), rank)
    f = parser.formula()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise DocumentError(f"trailing input at column {pos + 1}")
    return f


def emit_atom(a: Atom) -> str:
    terms = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        body = f"x{i}" if mag == 1 else f"{rat_str(mag)}*x{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"{'+' if c > 0 else '-'} {body}")
    expr = " ".join(terms) if terms else "0*x0"
    return f"{expr} {a.rel} 0"


def emit_formula(f: Formula, top: bool = True) -> str:
    if isinstance(f, Atom):
        return emit_atom(f)
    if isinstance(f, And):
        body = " & ".join(emit_formula(it, False) for it in f.items)
    else:
        body = " | ".join(emit_formula(it, False) for it in f.items)
    return body if top else f"({body})"
