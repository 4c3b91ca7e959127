"""Cartesian composition of effect algebras and factorization detection.

The composite of two algebras lives on all element pairs; a pair sum is
defined exactly when both component sums are.  Composite element ids put
the zero pair first and the unit pair second, then the remaining pairs in
lexicographic order of their component ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import UNDEFINED, UNIT, ZERO, EffectAlgebra, SumTable, validate
from .enumeration import canonical_form, enumerate_algebras


@dataclass(frozen=True)
class CompositeAlgebra:
    """A validated product algebra together with its pair bookkeeping."""

    algebra: EffectAlgebra
    pairing: tuple[tuple[int, int], ...]         # composite id -> (id1, id2)
    factors: tuple[EffectAlgebra, EffectAlgebra]

    @property
    def index(self) -> dict[tuple[int, int], int]:
        return {pair: cid for cid, pair in enumerate(self.pairing)}

    @property
    def n(self) -> int:
        return self.algebra.n


def compose(a: EffectAlgebra, b: EffectAlgebra) -> CompositeAlgebra:
    """Build and validate the composite of two algebras.

    Validity of the product is a theorem, so the validation here can only
    fail on an implementation bug; it runs anyway as a cheap guard.
    """
    pairs = [(ZERO, ZERO), (UNIT, UNIT)]
    pairs += sorted(
        (x, y)
        for x in a.elements()
        for y in b.elements()
        if (x, y) not in ((ZERO, ZERO), (UNIT, UNIT))
    )
    index = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    m = n - 2
    grid = [[UNDEFINED] * m for _ in range(m)]
    labels = ["0", "1"] + [
        f"({a.labels[x]},{b.labels[y]})" for x, y in pairs[2:]
    ]
    for i in range(2, n):
        x1, x2 = pairs[i]
        for j in range(i, n):
            y1, y2 = pairs[j]
            s1 = a.sum_of(x1, y1)
            s2 = b.sum_of(x2, y2)
            if s1 == UNDEFINED or s2 == UNDEFINED:
                v = UNDEFINED
            else:
                v = index[(s1, s2)]
            grid[i - 2][j - 2] = grid[j - 2][i - 2] = v
    table = SumTable(n, tuple(tuple(r) for r in grid), tuple(labels))
    return CompositeAlgebra(validate(table), tuple(pairs), (a, b))


def component(composite: CompositeAlgebra, side: int) -> tuple[EffectAlgebra, dict[int, int]]:
    """The embedded copy of one factor: the sub-structure on pairs whose
    other coordinate is zero.

    Returns the factor-shaped algebra read back out of the composite plus
    the embedding map factor id -> composite id.  Its unit is the pair
    (unit, zero) (resp. (zero, unit)), which differs from the composite
    unit, so the image is not an effect subalgebra of the composite.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    factor = composite.factors[side - 1]
    index = composite.index
    if side == 1:
        embed = {e: index[(e, ZERO)] for e in factor.elements()}
    else:
        embed = {e: index[(ZERO, e)] for e in factor.elements()}
    back = {cid: e for e, cid in embed.items()}
    unit_cid = embed[UNIT]
    assert unit_cid != UNIT, "embedded unit must differ from the composite unit"
    n = factor.n
    grid = [[UNDEFINED] * (n - 2) for _ in range(n - 2)]
    for e in factor.nontrivial():
        for f in factor.nontrivial():
            s = composite.algebra.sum_of(embed[e], embed[f])
            # embedded sums stay in the embedded set; unit id 1 is the cell code
            grid[e - 2][f - 2] = UNDEFINED if s == UNDEFINED else back[s]
    table = SumTable(n, tuple(tuple(r) for r in grid), factor.labels)
    rebuilt = validate(table)
    assert rebuilt.table.cells == factor.table.cells, "component must reproduce its factor"
    return rebuilt, embed


@lru_cache(maxsize=None)
def _algebras_of_order(n: int) -> tuple[EffectAlgebra, ...]:
    return enumerate_algebras(n).algebras


def is_composite(algebra: EffectAlgebra) -> tuple[EffectAlgebra, EffectAlgebra] | None:
    """Search all factorizations n = n1 * n2 (2 <= n1 <= n2) over the
    enumerated algebras of each order; return the first factor pair in
    canonical order whose composite is isomorphic to the input."""
    n = algebra.n
    target = canonical_form(algebra.table).table.cells
    for n1 in range(2, int(n ** 0.5) + 1):
        if n % n1 != 0:
            continue
        n2 = n // n1
        for a in _algebras_of_order(n1):
            for b in _algebras_of_order(n2):
                composed = compose(a, b)
                if canonical_form(composed.algebra.table).table.cells == target:
                    return a, b
    return None
