"""Sum tables and validation of finite effect algebras.

A finite effect algebra on n elements is stored as its *sum table*: the
(n-2) x (n-2) grid recording the partial sum on nontrivial pairs.  Element
ids are positional: 0 is the zero effect, 1 is the unit, 2..n-1 are the
nontrivial effects in table order.  Cells are plain ints:

    UNDEFINED (-1)   the pair has no sum
    ONE       (1)    the pair sums to the unit
    k >= 2           the pair sums to the nontrivial effect with id k

The trivial rows are implicit (x + zero = x; x + unit defined only for
x = zero) and are supplied by :meth:`EffectAlgebra.sum_of`.

This int encoding is also the canonical cell order used for isomorphism
testing: UNDEFINED < ONE < 2 < 3 < ... compares correctly as ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

ElementId = int

ZERO: ElementId = 0
UNIT: ElementId = 1
UNDEFINED = -1
ONE = 1

_LETTERS = "efghijklmnpqrstuvwxyzabcd"


def default_labels(n: int) -> tuple[str, ...]:
    """Positional display labels: "0", "1", then e, f, g, ..."""
    if n - 2 > len(_LETTERS):
        extra = [f"e{i}" for i in range(len(_LETTERS) + 1, n - 1)]
        return ("0", "1") + tuple(_LETTERS) + tuple(extra)
    return ("0", "1") + tuple(_LETTERS[: n - 2])


class MalformedTableError(ValueError):
    """Grid is structurally unusable (bad dimensions, dangling index)."""


class ViolationKind(Enum):
    SYMMETRY = "symmetry"
    COMPLEMENT_COUNT = "complement-count"
    ZERO_IN_TABLE = "zero-in-table"
    SELF_IN_ROW = "self-in-row"
    RULE_ET5 = "two-self-complements-summed"
    RULE_ET6 = "complement-square-defined"
    RULE_ET7 = "double-square-gap"
    ASSOC_DEFINEDNESS = "associativity-definedness"
    ASSOC_VALUE = "associativity-value"
    CANCELLATION = "cancellation"


@dataclass(frozen=True)
class Violation:
    """One failed table rule, with the offending elements as witness."""

    kind: ViolationKind
    witness: tuple[ElementId, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind.value} at {self.witness}: {self.message}"


class InvalidTableError(ValueError):
    """Raised by validate(); carries every violation found."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        lines = "; ".join(str(v) for v in violations[:4])
        more = "" if len(violations) <= 4 else f" (+{len(violations) - 4} more)"
        super().__init__(f"not an effect algebra: {lines}{more}")


@dataclass(frozen=True)
class SumTable:
    """Partial symmetric table of effect sums over n elements.

    Equality and hashing ignore labels; labels are display metadata only.
    """

    n: int
    cells: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(compare=False, default=())

    def __post_init__(self) -> None:
        m = self.n - 2
        if self.n < 2:
            raise MalformedTableError(f"order must be >= 2, got {self.n}")
        if len(self.cells) != m or any(len(row) != m for row in self.cells):
            raise MalformedTableError(f"grid must be {m}x{m}")
        for row in self.cells:
            for v in row:
                if v != UNDEFINED and not (0 <= v < self.n):
                    raise MalformedTableError(f"cell value {v} out of range for n={self.n}")
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(self.n))
        elif len(self.labels) != self.n or len(set(self.labels)) != self.n:
            raise MalformedTableError("labels must be distinct and cover all elements")

    @classmethod
    def from_rows(cls, rows, labels: tuple[str, ...] | None = None) -> "SumTable":
        """Build a table from the nontrivial row grid; order is inferred."""
        grid = tuple(tuple(row) for row in rows)
        return cls(len(grid) + 2, grid, tuple(labels) if labels else ())

    def cell(self, e: ElementId, f: ElementId) -> int:
        """Raw nontrivial cell lookup (e, f >= 2)."""
        return self.cells[e - 2][f - 2]

    def nontrivial(self) -> range:
        return range(2, self.n)

    def label(self, e: ElementId) -> str:
        return self.labels[e]

    def relabeled(self, labels) -> "SumTable":
        return SumTable(self.n, self.cells, tuple(labels))


def _lookup_total(table: SumTable):
    """Total sum lookup including the implicit trivial rows."""
    cells = table.cells

    def look(e: ElementId, f: ElementId) -> int:
        if e == ZERO:
            return f
        if f == ZERO:
            return e
        if e == UNIT or f == UNIT:
            return UNDEFINED
        return cells[e - 2][f - 2]

    return look


def structural_violations(table: SumTable) -> list[Violation]:
    """Rule checks that read the grid directly: symmetry, one unit per
    row, no zero cells, no self-valued cells, plus the derived local
    patterns (two self-complements summed, complement-square, double-square
    gap, in-row cancellation)."""
    out: list[Violation] = []
    lab = table.label
    n = table.n
    rng = table.nontrivial()

    for e in rng:
        for f in rng:
            if f > e:
                a, b = table.cell(e, f), table.cell(f, e)
                if a != b:
                    out.append(Violation(
                        ViolationKind.SYMMETRY, (e, f),
                        f"{lab(e)}+{lab(f)} and {lab(f)}+{lab(e)} disagree"))
            v = table.cell(e, f)
            if v == ZERO:
                out.append(Violation(
                    ViolationKind.ZERO_IN_TABLE, (e, f),
                    f"{lab(e)}+{lab(f)} = zero is impossible"))
            if v == e or v == f:
                out.append(Violation(
                    ViolationKind.SELF_IN_ROW, (e, f),
                    f"{lab(e)}+{lab(f)} = {lab(v)} repeats an operand"))

    for e in rng:
        count = sum(1 for f in rng if table.cell(e, f) == ONE)
        if count != 1:
            out.append(Violation(
                ViolationKind.COMPLEMENT_COUNT, (e,),
                f"row {lab(e)} contains the unit {count} times, expected 1"))

    # Derived local patterns.  These duplicate information the
    # associativity sweep can also surface, but give sharper diagnostics.
    comp = {e: next((f for f in rng if table.cell(e, f) == ONE), None) for e in rng}
    for e in rng:
        for f in rng:
            if e < f and comp[e] == e and comp[f] == f and table.cell(e, f) != UNDEFINED:
                out.append(Violation(
                    ViolationKind.RULE_ET5, (e, f),
                    f"{lab(e)} and {lab(f)} are both self-complementary, their sum must be undefined"))
        ce = comp[e]
        if ce is not None and ce != e and table.cell(e, e) != UNDEFINED:
            if table.cell(ce, ce) != UNDEFINED and e < ce:
                out.append(Violation(
                    ViolationKind.RULE_ET6, (e, ce),
                    f"{lab(e)}+{lab(e)} is defined, so {lab(ce)}+{lab(ce)} must be undefined"))
        v = table.cell(e, e)
        if v >= 2 and table.cell(v, v) != UNDEFINED and table.cell(e, v) == UNDEFINED:
            out.append(Violation(
                ViolationKind.RULE_ET7, (e, v),
                f"{lab(e)}+{lab(e)} = {lab(v)} and {lab(v)}+{lab(v)} is defined, so {lab(e)}+{lab(v)} must be defined"))
    for e in rng:
        seen: dict[int, int] = {}
        for f in rng:
            v = table.cell(e, f)
            if v == UNDEFINED or v == ONE:
                continue
            if v in seen:
                out.append(Violation(
                    ViolationKind.CANCELLATION, (e, seen[v], f),
                    f"{lab(e)}+{lab(seen[v])} = {lab(e)}+{lab(f)} = {lab(v)} breaks cancellation"))
            else:
                seen[v] = f
    return out


def associativity_violations(table: SumTable) -> list[Violation]:
    """Check (a+b)+c against a+(b+c) over every ordered triple, trivial
    elements included, with defined-iff-defined semantics."""
    out: list[Violation] = []
    look = _lookup_total(table)
    lab = table.label
    els = range(table.n)
    for a, b, c in itertools.product(els, els, els):
        ab = look(a, b)
        lhs = UNDEFINED if ab == UNDEFINED else look(ab, c)
        bc = look(b, c)
        rhs = UNDEFINED if bc == UNDEFINED else look(a, bc)
        if (lhs == UNDEFINED) != (rhs == UNDEFINED):
            side = "left" if lhs != UNDEFINED else "right"
            out.append(Violation(
                ViolationKind.ASSOC_DEFINEDNESS, (a, b, c),
                f"({lab(a)}+{lab(b)})+{lab(c)}: only the {side} association is defined"))
        elif lhs != UNDEFINED and lhs != rhs:
            out.append(Violation(
                ViolationKind.ASSOC_VALUE, (a, b, c),
                f"({lab(a)}+{lab(b)})+{lab(c)} = {lab(lhs)} but {lab(a)}+({lab(b)}+{lab(c)}) = {lab(rhs)}"))
    return out


def violations(table: SumTable) -> list[Violation]:
    """Every rule violation in the table; empty iff it is an effect algebra."""
    return structural_violations(table) + associativity_violations(table)


@dataclass(frozen=True)
class EffectAlgebra:
    """A sum table that passed validation, with derived structure.

    Construct only through :func:`validate`; the complement map and the
    order relation are computed there and assumed consistent everywhere.
    """

    table: SumTable
    complement: tuple[ElementId, ...]
    leq_matrix: tuple[tuple[bool, ...], ...]

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.table.labels

    def elements(self) -> range:
        return range(self.n)

    def nontrivial(self) -> range:
        return range(2, self.n)

    def sum_of(self, e: ElementId, f: ElementId) -> int:
        """Total sum lookup: the element id, or UNDEFINED."""
        if e == ZERO:
            return f
        if f == ZERO:
            return e
        if e == UNIT or f == UNIT:
            return UNDEFINED
        return self.table.cell(e, f)

    def complement_of(self, e: ElementId) -> ElementId:
        return self.complement[e]

    def leq(self, e: ElementId, f: ElementId) -> bool:
        return self.leq_matrix[e][f]

    def ominus(self, e: ElementId, f: ElementId) -> int:
        """e - f: the unique g with f + g = e, or UNDEFINED."""
        if not self.leq_matrix[f][e]:
            return UNDEFINED
        s = self.sum_of(self.complement[e], f)
        return UNDEFINED if s == UNDEFINED else self.complement[s]

    def count_defined(self) -> tuple[int, int]:
        """(defined, undefined) over ordered nontrivial pairs."""
        defined = sum(
            1
            for e in self.nontrivial()
            for f in self.nontrivial()
            if self.table.cell(e, f) != UNDEFINED
        )
        return defined, (self.n - 2) ** 2 - defined

    def multiples(self, e: ElementId, cap: int | None = None) -> list[ElementId]:
        """[e, e+e, e+e+e, ...] until the next sum is undefined."""
        if cap is None:
            cap = 2 * self.n
        out = [e]
        while len(out) < cap:
            nxt = self.sum_of(out[-1], e)
            if nxt == UNDEFINED:
                break
            out.append(nxt)
        return out

    def __repr__(self) -> str:
        return f"EffectAlgebra(n={self.n})"


def _derive(table: SumTable) -> EffectAlgebra:
    n = table.n
    comp = [UNIT, ZERO] + [0] * (n - 2)
    for e in table.nontrivial():
        comp[e] = next(f for f in table.nontrivial() if table.cell(e, f) == ONE)
    look = _lookup_total(table)
    leq = [[False] * n for _ in range(n)]
    for e in range(n):
        for f in range(n):
            leq[e][f] = any(look(e, g) == f for g in range(n))
    return EffectAlgebra(table, tuple(comp), tuple(tuple(row) for row in leq))


def validate(table: SumTable) -> EffectAlgebra:
    """Check every effect algebra rule; raise InvalidTableError listing all
    violations, or return the validated algebra with derived structure."""
    found = violations(table)
    if found:
        raise InvalidTableError(found)
    return _derive(table)


def check_derived_laws(algebra: EffectAlgebra) -> list[Violation]:
    """Re-check every derived law on a validated algebra.

    All of these are consequences of the defining rules, so a nonempty
    result signals a bug in validation or in the derived structure, not a
    bad table.  Used as a redundant sanity suite.
    """
    out: list[Violation] = []
    A = algebra
    n = A.n
    lab = A.labels.__getitem__
    els = range(n)

    def law(kind: ViolationKind, witness: tuple[int, ...], message: str) -> None:
        out.append(Violation(kind, witness, message))

    for e in els:
        if A.sum_of(e, ZERO) != e:
            law(ViolationKind.CANCELLATION, (e,), f"{lab(e)}+0 != {lab(e)}")
        if A.complement[A.complement[e]] != e:
            law(ViolationKind.COMPLEMENT_COUNT, (e,), "complement is not an involution")
    if A.complement[ZERO] != UNIT:
        law(ViolationKind.COMPLEMENT_COUNT, (ZERO,), "complement of zero is not the unit")

    for e in els:
        for f in els:
            s = A.sum_of(e, f)
            if s == ZERO and (e != ZERO or f != ZERO):
                law(ViolationKind.ZERO_IN_TABLE, (e, f), "nonzero pair sums to zero")
            if s == e and f != ZERO:
                law(ViolationKind.CANCELLATION, (e, f), "e+f = e with f nonzero")
            # definedness-order link: e+f defined iff e <= f'
            if (s != UNDEFINED) != A.leq(e, A.complement[f]):
                law(ViolationKind.ASSOC_DEFINEDNESS, (e, f),
                    "definedness disagrees with the order criterion")
            # undefined-pair lemmas
            if s != UNDEFINED and e != A.complement[f]:
                if A.sum_of(A.complement[e], A.complement[f]) != UNDEFINED:
                    law(ViolationKind.RULE_ET5, (e, f),
                        "complements of a non-complementary defined pair must not sum")
            if e != f and A.complement[e] == e and A.complement[f] == f and s != UNDEFINED:
                law(ViolationKind.RULE_ET5, (e, f), "two self-complements must not sum")
        # square lemmas
        s = A.sum_of(e, e)
        if s != UNDEFINED and A.complement[e] != e:
            ce = A.complement[e]
            if A.sum_of(ce, ce) != UNDEFINED:
                law(ViolationKind.RULE_ET6, (e, ce), "both e+e and e'+e' defined")
        if s != UNDEFINED and A.sum_of(s, s) != UNDEFINED and A.sum_of(e, s) == UNDEFINED:
            law(ViolationKind.RULE_ET7, (e, s), "e+e and (e+e)+(e+e) defined but e+(e+e) not")

    # cancellation and subtraction laws
    for e in els:
        seen: dict[int, int] = {}
        for f in els:
            s = A.sum_of(e, f)
            if s == UNDEFINED:
                continue
            if s in seen and seen[s] != f:
                law(ViolationKind.CANCELLATION, (e, seen[s], f), "cancellation fails")
            seen[s] = f
            if A.ominus(s, e) != f:
                law(ViolationKind.CANCELLATION, (e, f), "(e+f)-e != f")
    for e in els:
        for f in els:
            g = A.ominus(e, f)
            direct = [h for h in els if A.sum_of(f, h) == e]
            if g == UNDEFINED:
                if direct:
                    law(ViolationKind.CANCELLATION, (e, f), "subtraction misses a decomposition")
            elif direct != [g]:
                law(ViolationKind.CANCELLATION, (e, f), "subtraction formula disagrees with search")

    # the order is a bounded partial order
    for e in els:
        if not A.leq(ZERO, e) or not A.leq(e, UNIT) or not A.leq(e, e):
            law(ViolationKind.CANCELLATION, (e,), "order is not reflexive/bounded")
        for f in els:
            if e != f and A.leq(e, f) and A.leq(f, e):
                law(ViolationKind.CANCELLATION, (e, f), "order is not antisymmetric")
            for g in els:
                if A.leq(e, f) and A.leq(f, g) and not A.leq(e, g):
                    law(ViolationKind.CANCELLATION, (e, f, g), "order is not transitive")

    # at most one row with every sum defined
    full = [e for e in A.nontrivial()
            if all(A.table.cell(e, f) != UNDEFINED for f in A.nontrivial())]
    if len(full) > 1:
        law(ViolationKind.COMPLEMENT_COUNT, tuple(full), "two rows without undefined cells")
    return out
