"""States of an effect algebra: exact-rational state polytopes, the
separating / order-determining tests, quantum representability, fuzzy
embeddings, and product / marginal states on composites.

A state assigns each element a probability-like weight: the unit gets 1
and weights add across every defined sum.  The set of all states is a
polytope cut out of the unit box by the sum-table equations, computed
here entirely over Fractions so that every decision is tolerance-free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import ONE, UNDEFINED, UNIT, ZERO, EffectAlgebra, ElementId
from .compose import CompositeAlgebra

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class State:
    """Unit-additive weights, indexed by element id (0 maps to 0, 1 to 1)."""

    values: tuple[Fraction, ...]

    def __getitem__(self, e: ElementId) -> Fraction:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)


def is_state(algebra: EffectAlgebra, values) -> bool:
    """Direct table-walk check of the state conditions; used as the oracle
    against which the polytope computation is tested."""
    vals = tuple(values)
    if len(vals) != algebra.n:
        return False
    if vals[ZERO] != 0 or vals[UNIT] != 1:
        return False
    if any(v < 0 or v > 1 for v in vals):
        return False
    for e in algebra.elements():
        for f in algebra.elements():
            s = algebra.sum_of(e, f)
            if s != UNDEFINED and vals[e] + vals[f] != vals[s]:
                return False
    return True


@dataclass(frozen=True)
class StatePolytope:
    """Affine description and vertex list of the state set.

    dimension is the affine dimension of the polytope itself: -1 when
    empty, 0 for a unique state, >= 1 otherwise.  directions span the
    affine hull from the basepoint (the least vertex).
    """

    dimension: int
    basepoint: State | None
    directions: tuple[tuple[Fraction, ...], ...]
    vertices: tuple[State, ...]


def _state_equations(algebra: EffectAlgebra) -> tuple[list, list]:
    """One equation per defined upper-triangle cell, over the unknowns
    sigma(e) for nontrivial e (zero and unit substituted)."""
    n = algebra.n
    m = n - 2
    coeffs: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for e in algebra.nontrivial():
        for f in range(e, n):
            v = algebra.table.cell(e, f)
            if v == UNDEFINED:
                continue
            row = [_F0] * m
            row[e - 2] += 1
            row[f - 2] += 1
            if v == ONE:
                coeffs.append(row)
                rhs.append(_F1)
            else:
                row[v - 2] -= 1
                coeffs.append(row)
                rhs.append(_F0)
    return coeffs, rhs


def _box_vertices(particular, basis, m: int) -> list[tuple[Fraction, ...]]:
    """Vertices of {x = p + B t} intersected with the unit box, by brute
    force over facet subsets of the parameter-space inequalities."""
    k = len(basis)
    if k == 0:
        x = tuple(particular)
        return [x] if all(0 <= c <= 1 for c in x) else []
    # inequalities a . t <= b: coordinates bounded below by 0, above by 1
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    for i in range(m):
        row = [basis[d][i] for d in range(k)]
        ineqs.append(([-c for c in row], particular[i]))           # x_i >= 0
        ineqs.append((row[:], _F1 - particular[i]))                # x_i <= 1
    found: set[tuple[Fraction, ...]] = set()
    for subset in itertools.combinations(range(len(ineqs)), k):
        a = [ineqs[s][0] for s in subset]
        b = [ineqs[s][1] for s in subset]
        t = linalg.solve_square(a, b)
        if t is None:
            continue
        x = tuple(
            particular[i] + sum(basis[d][i] * t[d] for d in range(k))
            for i in range(m)
        )
        if all(0 <= c <= 1 for c in x):
            found.add(x)
    return sorted(found)


def state_space(algebra: EffectAlgebra) -> StatePolytope:
    """The polytope of all states, with exact vertices."""
    m = algebra.n - 2
    coeffs, rhs = _state_equations(algebra)
    solved = linalg.solve_affine(coeffs, rhs, m)
    if solved is None:
        return StatePolytope(-1, None, (), ())
    particular, basis = solved
    points = _box_vertices(particular, basis, m)
    if not points:
        return StatePolytope(-1, None, (), ())
    vertices = tuple(State((_F0, _F1) + p) for p in points)
    base = points[0]
    diffs = [[q - b for q, b in zip(p, base)] for p in points[1:]]
    dirs = tuple(tuple(row) for row in linalg.independent_rows(diffs)) if diffs else ()
    return StatePolytope(len(dirs), vertices[0], dirs, vertices)


def in_polytope(polytope: StatePolytope, values) -> bool:
    """Membership in the convex hull of the computed vertices, decided
    exactly via Caratheodory-size vertex subsets."""
    if not polytope.vertices:
        return False
    target = tuple(values)
    pts = [v.values for v in polytope.vertices]
    d = polytope.dimension
    for size in range(1, d + 2):
        for subset in itertools.combinations(pts, size):
            # solve sum(l_i v_i) = target, sum(l_i) = 1, l_i >= 0
            cols = len(subset)
            coeffs = [[Fraction(v[j]) for v in subset] for j in range(len(target))]
            coeffs.append([_F1] * cols)
            rhs = [Fraction(t) for t in target] + [_F1]
            sol = linalg.solve_affine(coeffs, rhs, cols)
            if sol is None:
                continue
            part, basis = sol
            # affinely dependent subsets are redundant: some independent
            # subset of the same size or smaller also witnesses membership
            if not basis and all(c >= 0 for c in part):
                return True
    return False


def is_separating(algebra: EffectAlgebra, polytope: StatePolytope) -> bool:
    """Do the states tell all pairs of elements apart?  Vertices suffice:
    a linear functional constant on all vertices is constant on the hull."""
    for e in algebra.elements():
        for f in range(e + 1, algebra.n):
            if all(v[e] == v[f] for v in polytope.vertices):
                return False
    return True


def _order_determining_on(algebra: EffectAlgebra, states) -> bool:
    states = list(states)
    for e, f in _incomparable_pairs(algebra):
        if not any(s[e] > s[f] for s in states):
            return False
    return True


def _incomparable_pairs(algebra: EffectAlgebra) -> list[tuple[int, int]]:
    return [
        (e, f)
        for e in algebra.elements()
        for f in algebra.elements()
        if not algebra.leq(e, f)
    ]


def is_order_determining(algebra: EffectAlgebra, polytope: StatePolytope) -> bool:
    """Do the states detect every order violation?  For each pair with e
    not below f some vertex must weigh e strictly above f (the maximum of
    a linear functional over the polytope sits at a vertex)."""
    return _order_determining_on(algebra, polytope.vertices)


def is_quantum(algebra: EffectAlgebra) -> bool:
    """Representable by finite-dimensional quantum effects; for finite
    algebras this is exactly having an order-determining state set."""
    return is_order_determining(algebra, state_space(algebra))


def min_fuzzy_dimension(algebra: EffectAlgebra,
                        polytope: StatePolytope | None = None) -> int | None:
    """Least number of vertex states that is already order-determining.

    This is the dimension of the smallest unit-cube model built from
    vertex states, hence an upper bound on the least unit-cube dimension
    overall; interior states can occasionally do better (P6 needs all
    four vertices but has a two-coordinate model).  None when the algebra
    is not quantum.
    """
    if polytope is None:
        polytope = state_space(algebra)
    if not is_order_determining(algebra, polytope):
        return None
    subset = _min_od_vertices(algebra, polytope)
    return len(subset)


def _min_od_vertices(algebra: EffectAlgebra, polytope: StatePolytope) -> tuple[State, ...]:
    verts = polytope.vertices
    for size in range(1, len(verts) + 1):
        for subset in itertools.combinations(verts, size):
            if _order_determining_on(algebra, subset):
                return subset
    raise AssertionError("order-determining vertex set has no minimal subset")


def fuzzy_embedding(algebra: EffectAlgebra, states) -> dict[int, tuple[Fraction, ...]]:
    """Map each element to its value vector under the given states.

    When the states are order-determining this is a strict unit-cube
    model of the algebra; callers can confirm with
    models.verify_fuzzy.  Raises ValueError if the states are not
    order-determining, since the image may then collapse elements.
    """
    states = list(states)
    if not _order_determining_on(algebra, states):
        raise ValueError("states are not order-determining; embedding may not be injective")
    return {
        e: tuple(s[e] for s in states)
        for e in algebra.elements()
    }


@dataclass(frozen=True)
class StateAnalysis:
    """Everything the state space says about one algebra."""

    polytope: StatePolytope
    is_separating: bool
    is_order_determining: bool
    is_quantum: bool
    min_fuzzy_dimension: int | None
    fuzzy_embedding: dict[int, tuple[Fraction, ...]] | None


def analyze(algebra: EffectAlgebra) -> StateAnalysis:
    polytope = state_space(algebra)
    separating = is_separating(algebra, polytope)
    od = is_order_determining(algebra, polytope)
    if od:
        subset = _min_od_vertices(algebra, polytope)
        embedding = fuzzy_embedding(algebra, subset)
        mfd = len(subset)
    else:
        embedding = None
        mfd = None
    return StateAnalysis(polytope, separating, od, od, mfd, embedding)


def product_state(composite: CompositeAlgebra, sigma1: State, sigma2: State,
                  t: Fraction) -> State:
    """Weight-t mixture of factor states, evaluated componentwise on the
    composite: value at (e1, e2) is t*sigma1(e1) + (1-t)*sigma2(e2)."""
    t = Fraction(t)
    if t < 0 or t > 1:
        raise ValueError("mixture weight must lie in [0, 1]")
    vals = [
        t * sigma1[e1] + (1 - t) * sigma2[e2]
        for (e1, e2) in composite.pairing
    ]
    return State(tuple(vals))


def marginal_state(composite: CompositeAlgebra, sigma: State, side: int) -> State | None:
    """Restrict a composite state to one factor and renormalize.

    Returns None when the normalizer (the weight of the unit paired with
    the other factor's zero) vanishes.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    factor = composite.factors[side - 1]
    if side == 1:
        norm = sigma[composite.index[(UNIT, ZERO)]]
        if norm == 0:
            return None
        vals = [sigma[composite.index[(e, ZERO)]] / norm for e in factor.elements()]
    else:
        norm = sigma[composite.index[(ZERO, UNIT)]]
        if norm == 0:
            return None
        vals = [sigma[composite.index[(ZERO, e)]] / norm for e in factor.elements()]
    return State(tuple(vals))
