"""Structural classification: defined-sum counts and bounds, total order
and single-generator (scale) recognition, sparse families, and the
repeated-multiple witness that rules out quantum models."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ONE, UNDEFINED, UNIT, ZERO, EffectAlgebra, ElementId


def max_defined(n: int) -> int:
    """Largest possible number of defined nontrivial ordered pairs."""
    if n < 2:
        raise ValueError("order must be at least 2")
    return (n - 1) * (n - 2) // 2


def min_defined(n: int) -> int:
    """Smallest possible number: one complement sum per nontrivial row."""
    if n < 2:
        raise ValueError("order must be at least 2")
    return n - 2


def sparse_count(n: int) -> int:
    """Number of algebras of order n whose only defined sums are the
    complement sums: n/2 for even n, (n-1)/2 for odd n."""
    if n < 2:
        raise ValueError("order must be at least 2")
    return n // 2


@dataclass(frozen=True)
class Classification:
    n: int
    defined_count: int
    is_totally_ordered: bool
    is_scale: bool
    scale_generator: ElementId | None
    is_sparse: bool
    sparse_params: tuple[int, int] | None
    family_name: str | None
    not_quantum_witness: tuple[ElementId, ElementId, int] | None
    self_complementary_count: int
    is_composite: bool | None = None


def not_quantum_witness(algebra: EffectAlgebra) -> tuple[ElementId, ElementId, int] | None:
    """A pair of distinct elements with an equal defined m-fold sum for
    some m >= 2.  Such a pair cannot exist among quantum effects, so a
    witness proves the algebra is not (weak) quantum; absence proves
    nothing.  Returns the first witness scanning m upward, then pairs."""
    n = algebra.n
    # m-fold sums stabilize or die within 2n steps: the orbit is finite
    chains = {e: algebra.multiples(e, cap=2 * n) for e in range(2, n)}
    for m in range(2, 2 * n + 1):
        live = [(e, c[m - 1]) for e, c in chains.items() if len(c) >= m]
        if not live:
            return None
        for a in range(len(live)):
            for b in range(a + 1, len(live)):
                if live[a][1] == live[b][1]:
                    return live[a][0], live[b][0], m
    return None


def _is_totally_ordered(algebra: EffectAlgebra) -> bool:
    return all(
        algebra.leq(e, f) or algebra.leq(f, e)
        for e in algebra.elements()
        for f in algebra.elements()
    )


def _generator(algebra: EffectAlgebra) -> ElementId | None:
    """An element whose iterated sums reach every nontrivial element and
    the unit, if one exists."""
    if algebra.n == 2:
        return None
    needed = set(range(2, algebra.n)) | {UNIT}
    for e in algebra.nontrivial():
        if set(algebra.multiples(e)) >= needed:
            return e
    return None


def _full_row(algebra: EffectAlgebra) -> ElementId | None:
    for e in algebra.nontrivial():
        if all(algebra.table.cell(e, f) != UNDEFINED for f in algebra.nontrivial()):
            return e
    return None


def _not_scale_shortcut(algebra: EffectAlgebra) -> bool:
    """Fast disqualifier: complementary e, f whose squares are both
    undefined cannot occur in a totally ordered algebra."""
    for e in algebra.nontrivial():
        f = algebra.complement_of(e)
        if f == e or f in (ZERO, UNIT):
            continue
        if (algebra.sum_of(e, e) == UNDEFINED
                and algebra.sum_of(f, f) == UNDEFINED):
            return True
    return False


def classify(algebra: EffectAlgebra, family_lookup: bool = True) -> Classification:
    """All structural flags except compositeness (see compose.is_composite).

    The scale decision is taken three independent ways (total order,
    single generator, a row with every sum defined) and cross-checked;
    they are provably equivalent, so disagreement is an implementation
    bug, not a property of the input.
    """
    n = algebra.n
    defined, _ = algebra.count_defined()
    total = _is_totally_ordered(algebra)
    gen = _generator(algebra)
    full = _full_row(algebra)
    if n == 2:
        scale_votes = (total, True, True)
        gen = None
    else:
        scale_votes = (total, gen is not None, full is not None)
    if len(set(scale_votes)) != 1:
        raise AssertionError(f"scale criteria disagree: {scale_votes}")
    is_scale = scale_votes[0]
    if is_scale and _not_scale_shortcut(algebra):
        raise AssertionError("scale shortcut contradicts the scale criteria")
    self_comp = sum(1 for e in algebra.nontrivial() if algebra.complement_of(e) == e)
    is_sparse = defined == n - 2
    sparse_params = None
    if is_sparse:
        k = self_comp
        ell = (n - 2 - k) // 2
        sparse_params = (k, ell)
    name = _family_name(algebra, is_scale, sparse_params) if family_lookup else None
    return Classification(
        n=n,
        defined_count=defined,
        is_totally_ordered=total,
        is_scale=is_scale,
        scale_generator=gen if is_scale else None,
        is_sparse=is_sparse,
        sparse_params=sparse_params,
        family_name=name,
        not_quantum_witness=not_quantum_witness(algebra),
        self_complementary_count=self_comp,
    )


def _family_name(algebra: EffectAlgebra, is_scale: bool,
                 sparse_params: tuple[int, int] | None) -> str | None:
    n = algebra.n
    if is_scale:
        return f"S{n}"
    if sparse_params is not None:
        k, ell = sparse_params
        if ell == 0:
            return f"D{n}"
        if k == 0:
            return f"P{n}"
        return f"E{n}({k},{ell})"
    # catalog lookup for the remaining named algebras
    from . import catalog
    from .enumeration import canonical_form

    key = canonical_form(algebra.table).table.cells
    return catalog.name_by_canonical_cells(n, key)
