"""The `.ea` algebra document format.

Line oriented, one field per line, `#` comments, with two kinds::

    kind table                      kind interval
    labels 0 a b 1                  rank 2
    zero 0                          steps 1/1 1/1
    one 1                           cone lex(product 1, product 1)
    sum a+b=1                       unit 2/1 1/1
    sum 0+0=0                       lexsplit 1
    ...

Sum triples use labels and are symmetrized on parse; emit writes each
unordered pair once, so parse . emit . parse is the identity on
canonical documents. All rationals render as ``p/q``. Steps give the
coordinate lattice (0/1 marks a dense rational coordinate).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import lindsl
from .effalg import FiniteEffectAlgebra, IntervalEffectAlgebra
from .errors import DocumentError
from .pogroup import (ConePoGroup, ConeSpec, CustomCone, LexCone,
                      ProductCone, cone_rank)
from .vecs import Vec, rat, rat_str

F = Fraction

_LABEL = re.compile(r"^[^\s+=#]+$")
_TRIPLE = re.compile(r"^([^\s+=#]+)\+([^\s+=#]+)=([^\s+=#]+)$")


@dataclass(frozen=True)
class TableDocument:
    labels: tuple[str, ...]
    zero: str
    one: str
    sums: tuple[tuple[str, str, str], ...]

    def to_algebra(self) -> FiniteEffectAlgebra:
        index = {l: i for i, l in enumerate(self.labels)}
        n = len(self.labels)
        table: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
        for a, b, c in self.sums:
            i, j, k = index[a], index[b], index[c]
            table[i][j] = k
            table[j][i] = k
        return FiniteEffectAlgebra(
            labels=self.labels,
            table=tuple(tuple(row) for row in table),
            zero=index[self.zero],
            one=index[self.one])


@dataclass(frozen=True)
class IntervalDocument:
    rank: int
    steps: tuple[Fraction, ...]
    cone: ConeSpec
    unit: Vec
    lexsplit: Optional[int]

    def to_algebra(self) -> IntervalEffectAlgebra:
        group = ConePoGroup(self.rank, self.cone, unit=self.unit,
                            steps=self.steps)
        return IntervalEffectAlgebra(group, self.unit,
                                     head_rank=self.lexsplit)


AlgebraDocument = Union[TableDocument, IntervalDocument]


def _fields(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        yield lineno, parts[0], parts[1].strip() if len(parts) > 1 else ""


def parse_document(text: str) -> AlgebraDocument:
    fields = list(_fields(text))
    if not fields:
        raise DocumentError("empty document")
    lineno, key, value = fields[0]
    if key != "kind":
        raise DocumentError("first field must be 'kind'", lineno)
    if value == "table":
        return _parse_table(fields[1:])
    if value == "interval":
        return _parse_interval(fields[1:])
    raise DocumentError(f"unknown kind {value!r}", lineno)


def _parse_table(fields) -> TableDocument:
    labels = None
    zero = one = None
    sums: dict[tuple[str, str], tuple[str, int]] = {}
    order: list[tuple[str, str, str]] = []
    for lineno, key, value in fields:
        if key == "labels":
            if labels is not None:
                raise DocumentError("duplicate labels field", lineno)
            labels = tuple(value.split())
            if len(set(labels)) != len(labels):
                raise DocumentError("labels are not unique", lineno)
            for l in labels:
                if not _LABEL.match(l):
                    raise DocumentError(f"bad label {l!r}", lineno)
        elif key in ("zero", "one"):
            if key == "zero":
                zero = value
            else:
                one = value
        elif key == "sum":
            m = _TRIPLE.match(value.replace(" ", ""))
            if m is None:
                raise DocumentError(f"malformed triple {value!r}", lineno)
            a, b, c = m.groups()
            pair = (a, b) if a <= b else (b, a)
            if pair in sums and sums[pair][0] != c:
                raise DocumentError(
                    f"conflicting value for {a}+{b}", lineno)
            if pair not in sums:
                sums[pair] = (c, lineno)
                order.append((pair[0], pair[1], c))
        else:
            raise DocumentError(f"unknown field {key!r}", lineno)
    if labels is None:
        raise DocumentError("missing labels field")
    if zero is None or one is None:
        raise DocumentError("missing zero or one field")
    known = set(labels)
    for a, b, c in order:
        for l in (a, b, c):
            if l not in known:
                line = sums[(a, b)][1]
                raise DocumentError(f"unknown label {l!r} in sum", line)
    for l in (zero, one):
        if l not in known:
            raise DocumentError(f"unknown label {l!r}")
    return TableDocument(labels=labels, zero=zero, one=one,
                         sums=tuple(sorted(order)))


def _parse_interval(fields) -> IntervalDocument:
    rank = None
    steps = None
    cone = None
    unit = None
    lexsplit = None
    cone_text = None
    for lineno, key, value in fields:
        if key == "rank":
            try:
                rank = int(value)
            except ValueError:
                raise DocumentError(f"bad rank {value!r}", lineno)
        elif key == "steps":
            try:
                steps = tuple(rat(v) for v in value.split())
            except (ValueError, ZeroDivisionError):
                raise DocumentError(f"bad steps {value!r}", lineno)
        elif key == "cone":
            cone_text = (value, lineno)
        elif key == "unit":
            try:
                unit = Vec.from_iter(value.split())
            except (ValueError, ZeroDivisionError):
                raise DocumentError(f"bad unit {value!r}", lineno)
        elif key == "lexsplit":
            try:
                lexsplit = int(value)
            except ValueError:
                raise DocumentError(f"bad lexsplit {value!r}", lineno)
        else:
            raise DocumentError(f"unknown field {key!r}", lineno)
    if rank is None:
        raise DocumentError("missing rank field")
    if cone_text is None:
        raise DocumentError("missing cone field")
    try:
        cone = parse_cone(cone_text[0])
    except DocumentError as exc:
        raise DocumentError(f"in cone expression: {exc.message}",
                            cone_text[1])
    if cone_rank(cone) != rank:
        raise DocumentError(
            f"cone rank {cone_rank(cone)} differs from rank {rank}",
            cone_text[1])
    if unit is None:
        raise DocumentError("missing unit field")
    if unit.rank != rank:
        raise DocumentError("unit rank differs from rank")
    if steps is None:
        steps = (F(1),) * rank
    if len(steps) != rank:
        raise DocumentError("steps length differs from rank")
    return IntervalDocument(rank=rank, steps=steps, cone=cone, unit=unit,
                            lexsplit=lexsplit)


# -- cone expressions ---------------------------------------------------------


def parse_cone(text: str) -> ConeSpec:
    spec, rest = _parse_cone(text.strip())
    if rest.strip():
        raise DocumentError(f"trailing cone input {rest!r}")
    return spec


def _parse_cone(text: str) -> tuple[ConeSpec, str]:
    text = text.lstrip()
    if text.startswith("product"):
        rest = text[len("product"):].lstrip()
        m = re.match(r"(\d+)", rest)
        if m is None:
            raise DocumentError("product needs a rank")
        return ProductCone(int(m.group(1))), rest[m.end():]
    if text.startswith("lex"):
        rest = text[len("lex"):].lstrip()
        if not rest.startswith("("):
            raise DocumentError("lex needs '('")
        left, rest = _parse_cone(rest[1:])
        rest = rest.lstrip()
        if not rest.startswith(","):
            raise DocumentError("lex needs ','")
        right, rest = _parse_cone(rest[1:])
        rest = rest.lstrip()
        if not rest.startswith(")"):
            raise DocumentError("lex needs ')'")
        return LexCone(left, right), rest[1:]
    if text.startswith("custom"):
        rest = text[len("custom"):].lstrip()
        m = re.match(r"(\d+)\s*\{", rest)
        if m is None:
            raise DocumentError("custom needs a rank and '{'")
        rank = int(m.group(1))
        body = rest[m.end():]
        depth = 1
        for i, ch in enumerate(body):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    formula = lindsl.parse_formula(body[:i], rank)
                    return CustomCone(rank, formula), body[i + 1:]
        raise DocumentError("unterminated custom cone")
    raise DocumentError(f"unknown cone expression {text!r}")


def emit_cone(cone: ConeSpec) -> str:
    if isinstance(cone, ProductCone):
        return f"product {cone.rank}"
    if isinstance(cone, LexCone):
        return f"lex({emit_cone(cone.left)}, {emit_cone(cone.right)})"
    return f"custom {cone.rank} {{{lindsl.emit_formula(cone.predicate)}}}"


# -- emission -------------------------------------------------------------------


def emit_document(doc: AlgebraDocument) -> str:
    lines = []
    if isinstance(doc, TableDocument):
        lines.append("kind table")
        lines.append("labels " + " ".join(doc.labels))
        lines.append(f"zero {doc.zero}")
        lines.append(f"one {doc.one}")
        for a, b, c in sorted(doc.sums):
            lines.append(f"sum {a}+{b}={c}")
    else:
        lines.append("kind interval")
        lines.append(f"rank {doc.rank}")
        lines.append("steps " + " ".join(rat_str(s) for s in doc.steps))
        lines.append("cone " + emit_cone(doc.cone))
        lines.append("unit " + " ".join(rat_str(c) for c in doc.unit.coords))
        if doc.lexsplit is not None:
            lines.append(f"lexsplit {doc.lexsplit}")
    return "\n".join(lines) + "\n"


def document_of(E) -> AlgebraDocument:
    """The canonical document of an algebra built in memory."""
    if isinstance(E, FiniteEffectAlgebra):
        sums = []
        for i in range(E.n):
            for j in range(i, E.n):
                k = E.table[i][j]
                if k is None:
                    continue
                a, b = E.labels[i], E.labels[j]
                pair = (a, b) if a <= b else (b, a)
                sums.append((pair[0], pair[1], E.labels[k]))
        return TableDocument(labels=E.labels, zero=E.labels[E.zero],
                             one=E.labels[E.one], sums=tuple(sorted(sums)))
    return IntervalDocument(rank=E.rank, steps=E.group.steps,
                            cone=E.group.cone, unit=E.unit,
                            lexsplit=E.head_rank)


def load_algebra(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read()).to_algebra()
