"""Verification of concrete models of a sum table.

Three model kinds are checked against a validated algebra:

* multiplicative models: elements are scalars or vectors whose effect sum
  is (componentwise) multiplication; a pair is summable exactly when the
  product is again an assigned value.  Entries live in the field
  Q(zeta) with zeta = exp(i*pi/6), which contains both i and the cube
  root of unity w = exp(2*pi*i/3), so equality checks are exact.
* unit-cube (fuzzy) models: vectors of rationals in [0,1]^m added
  componentwise, summable when every coordinate sum stays at most 1.
* quantum models: hermitian matrices 0 <= M <= I with matrix addition,
  checked numerically to a tolerance (the only floating-point code path).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ONE, UNDEFINED, UNIT, ZERO, EffectAlgebra, ElementId


class Cyc:
    """Exact number in Q(zeta12): coeffs of 1, z, z^2, z^3 with
    z^4 = z^2 - 1.  The imaginary unit is z^3; the cube root of unity is
    z^4 = z^2 - 1."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @classmethod
    def _raw(cls, coeffs) -> "Cyc":
        out = object.__new__(cls)
        out.c = tuple(coeffs)
        return out

    @classmethod
    def rational(cls, q) -> "Cyc":
        return cls(Fraction(q))

    @classmethod
    def from_parts(cls, re=0, im=0, omega=0) -> "Cyc":
        """re + im*i + omega*w with rational parts; covers every model entry."""
        re, im, om = Fraction(re), Fraction(im), Fraction(omega)
        return cls(re - om, 0, om, im)

    def __mul__(self, other: "Cyc") -> "Cyc":
        a, b = self.c, other.c
        prod = [Fraction(0)] * 7
        for i in range(4):
            if a[i] == 0:
                continue
            for j in range(4):
                if b[j]:
                    prod[i + j] += a[i] * b[j]
        # reduce by z^4 = z^2 - 1 (so z^5 = z^3 - z, z^6 = -1)
        out = list(prod[:4])
        out[2] += prod[4]
        out[0] -= prod[4]
        out[3] += prod[5]
        out[1] -= prod[5]
        out[0] -= prod[6]
        return Cyc._raw(out)

    def __add__(self, other: "Cyc") -> "Cyc":
        return Cyc._raw(tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "Cyc":
        return Cyc._raw(tuple(-x for x in self.c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Cyc) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"Cyc{self.c}"


I_UNIT = Cyc(0, 0, 0, 1)
OMEGA = Cyc(-1, 0, 1, 0)


@dataclass(frozen=True)
class MultiplicativeModel:
    """Total assignment of same-length value vectors to element ids."""

    assignment: dict[ElementId, tuple[Cyc, ...]]

    @property
    def zero_value(self) -> tuple[Cyc, ...]:
        return self.assignment[ZERO]

    @property
    def one_value(self) -> tuple[Cyc, ...]:
        return self.assignment[UNIT]

    @property
    def width(self) -> int:
        return len(self.assignment[ZERO])


@dataclass(frozen=True)
class FuzzyAssignment:
    """Total assignment of [0,1]^m rational vectors to element ids."""

    assignment: dict[ElementId, tuple[Fraction, ...]]

    @property
    def width(self) -> int:
        return len(self.assignment[ZERO])


@dataclass(frozen=True)
class ModelVerdict:
    ok: bool
    witness: tuple | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(witness, message) -> ModelVerdict:
    return ModelVerdict(False, witness, message)


def verify_multiplicative(algebra: EffectAlgebra, model: MultiplicativeModel) -> ModelVerdict:
    """Entrywise products must land in the assigned image exactly when the
    table sum is defined, and on the right element when they do."""
    assign = model.assignment
    n = algebra.n
    if sorted(assign) != list(range(n)):
        raise ValueError("assignment must cover every element id exactly once")
    width = model.width
    if any(len(v) != width for v in assign.values()):
        raise ValueError("all value vectors must have the same length")
    if len(set(assign.values())) != n:
        dup = [
            (e, f) for e in range(n) for f in range(e + 1, n)
            if assign[e] == assign[f]
        ]
        return _fail(dup[0], "assignment is not injective")
    image = {v: e for e, v in assign.items()}
    for e in range(n):
        for f in range(n):
            prod = tuple(x * y for x, y in zip(assign[e], assign[f]))
            hit = image.get(prod)
            s = algebra.sum_of(e, f)
            if s == UNDEFINED:
                if hit is not None:
                    return _fail((e, f), "product is assigned but the table sum is undefined")
            else:
                if hit is None:
                    return _fail((e, f), "table sum is defined but the product is unassigned")
                if hit != s:
                    return _fail((e, f), "product lands on the wrong element")
    return ModelVerdict(True)


def verify_fuzzy(algebra: EffectAlgebra, fuzzy: FuzzyAssignment,
                 weak: bool = False) -> ModelVerdict:
    """Strict mode: a table sum is defined iff every coordinate sum stays
    at most 1, and the vector sum equals the assigned image of the result.
    Weak mode waives the converse: coordinate-admissible pairs may still
    be table-undefined."""
    assign = fuzzy.assignment
    n = algebra.n
    if sorted(assign) != list(range(n)):
        raise ValueError("assignment must cover every element id exactly once")
    width = fuzzy.width
    if any(len(v) != width for v in assign.values()):
        raise ValueError("all value vectors must have the same length")
    if assign[ZERO] != (Fraction(0),) * width:
        return _fail((ZERO,), "zero must map to the all-zero vector")
    if assign[UNIT] != (Fraction(1),) * width:
        return _fail((UNIT,), "unit must map to the all-one vector")
    if any(c < 0 or c > 1 for v in assign.values() for c in v):
        bad = next(e for e, v in assign.items() if any(c < 0 or c > 1 for c in v))
        return _fail((bad,), "vector entries must lie in [0, 1]")
    if len(set(assign.values())) != n:
        dup = [
            (e, f) for e in range(n) for f in range(e + 1, n)
            if assign[e] == assign[f]
        ]
        return _fail(dup[0], "assignment is not injective")
    for e in range(n):
        for f in range(n):
            vec = tuple(x + y for x, y in zip(assign[e], assign[f]))
            admissible = all(c <= 1 for c in vec)
            s = algebra.sum_of(e, f)
            if s != UNDEFINED:
                if not admissible:
                    return _fail((e, f), "table sum is defined but a coordinate exceeds 1")
                if vec != assign[s]:
                    return _fail((e, f), "vector sum differs from the assigned result")
            elif admissible and not weak:
                return _fail((e, f), "coordinate sums stay within 1 but the table sum is undefined")
    return ModelVerdict(True)


def _subset_sums_to_unit(algebra: EffectAlgebra, k: int):
    """Distinct nontrivial k-subsets whose total sum is the unit and whose
    members all have undefined squares."""
    squares_undefined = [
        e for e in algebra.nontrivial() if algebra.sum_of(e, e) == UNDEFINED
    ]
    for subset in itertools.combinations(squares_undefined, k):
        acc = subset[0]
        for x in subset[1:]:
            acc = algebra.sum_of(acc, x)
            if acc == UNDEFINED:
                break
        if acc == UNIT:
            yield subset


def verify_fuzzy_dimension_bound(algebra: EffectAlgebra, m: int,
                                 max_denominator: int = 12) -> bool:
    """Does a strict unit-cube model of dimension m exist?

    Counting-argument short-circuit first: m+1 elements summing to the
    unit, each with an undefined square, rule dimension m out entirely
    (per coordinate at most one of them can exceed 1/2, so some element
    ends up at most 1/2 everywhere and its double would be admissible).

    Otherwise search exhaustively over assignments whose entries have
    denominator at most max_denominator.  Each coordinate of a strict
    model is a state, so the search runs over bounded-denominator states
    and asks for an order-determining m-subset; a negative answer is then
    honest only up to the denominator bound.
    """
    if m < 1:
        raise ValueError("dimension must be positive")
    for k in range(m + 1, algebra.n - 1):
        if next(_subset_sums_to_unit(algebra, k), None) is not None:
            return False
    from . import states as states_mod

    polytope = states_mod.state_space(algebra)
    if polytope.dimension < 0:
        return False
    bounded = _bounded_denominator_states(algebra, polytope, max_denominator)
    if not states_mod._order_determining_on(algebra, bounded):
        return False
    for subset in itertools.combinations(bounded, m):
        if states_mod._order_determining_on(algebra, subset):
            return True
    return False


def _bounded_denominator_states(algebra, polytope, max_den):
    """All states whose every value has denominator <= max_den, vertices
    first.  Enumerated over the free coordinates of the affine hull."""
    from . import states as states_mod
    from . import linalg

    n = algebra.n
    mm = n - 2
    coeffs, rhs = states_mod._state_equations(algebra)
    solved = linalg.solve_affine(coeffs, rhs, mm)
    if solved is None:
        return []
    particular, basis = solved
    k = len(basis)
    if k > 3:
        raise ValueError("free dimension too large for the bounded search")
    farey = sorted(
        {Fraction(p, q) for q in range(1, max_den + 1) for p in range(q + 1)}
    )
    out = list(polytope.vertices)
    seen = {v.values for v in out}
    if k == 0:
        return out
    # free coordinates parametrize the affine hull bijectively
    _, pivots = linalg.rref(coeffs) if coeffs else ([], [])
    free_cols = [c for c in range(mm) if c not in pivots]
    for combo in itertools.product(farey, repeat=k):
        t = linalg.solve_square(
            [[basis[d][c] for d in range(k)] for c in free_cols],
            [combo[i] - particular[free_cols[i]] for i in range(k)],
        )
        if t is None:
            continue
        x = tuple(
            particular[i] + sum(basis[d][i] * t[d] for d in range(k))
            for i in range(mm)
        )
        if any(c < 0 or c > 1 or c.denominator > max_den for c in x):
            continue
        vals = (Fraction(0), Fraction(1)) + x
        if vals in seen:
            continue
        seen.add(vals)
        out.append(states_mod.State(vals))
    return out


def verify_quantum_matrices(algebra: EffectAlgebra,
                            assignment: dict[ElementId, np.ndarray],
                            tol: float = 1e-9) -> ModelVerdict:
    """Numeric check that hermitian matrices realize the sum table: every
    matrix satisfies 0 <= M <= I, a pair is table-defined exactly when the
    eigenvalues of the sum stay at most 1 + tol, and defined sums match
    the assigned image entrywise."""
    n = algebra.n
    if sorted(assignment) != list(range(n)):
        raise ValueError("assignment must cover every element id exactly once")
    mats = {e: np.asarray(v, dtype=complex) for e, v in assignment.items()}
    d = mats[ZERO].shape[0]
    for e, mat in mats.items():
        if mat.shape != (d, d):
            raise ValueError("all matrices must share one square shape")
        if np.max(np.abs(mat - mat.conj().T)) > tol:
            raise ValueError(f"matrix for element {e} is not hermitian within tol")
    if np.max(np.abs(mats[ZERO])) > tol:
        return _fail((ZERO,), "zero must map to the zero matrix")
    if np.max(np.abs(mats[UNIT] - np.eye(d))) > tol:
        return _fail((UNIT,), "unit must map to the identity")
    for e, mat in mats.items():
        eig = np.linalg.eigvalsh(mat)
        if eig.min() < -tol or eig.max() > 1 + tol:
            return _fail((e,), "matrix is not between 0 and the identity")
    for e in range(n):
        for f in range(e + 1, n):
            if np.max(np.abs(mats[e] - mats[f])) <= tol:
                return _fail((e, f), "assignment is not injective")
    for e in range(n):
        for f in range(n):
            total = mats[e] + mats[f]
            admissible = np.linalg.eigvalsh(total).max() <= 1 + tol
            s = algebra.sum_of(e, f)
            if s == UNDEFINED:
                if admissible:
                    return _fail((e, f), "matrix sum is admissible but the table sum is undefined")
            else:
                if not admissible:
                    return _fail((e, f), "table sum is defined but the matrix sum exceeds 1")
                if np.max(np.abs(total - mats[s])) > tol:
                    return _fail((e, f), "matrix sum differs from the assigned result")
    return ModelVerdict(True)
