"""Small exact linear algebra over Fractions: just enough Gaussian
elimination for affine solution sets and rank computations."""

from __future__ import annotations

from fractions import Fraction

Vec = list[Fraction]
Mat = list[list[Fraction]]


def rref(matrix: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    mat = [row[:] for row in matrix]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return mat, pivots


def solve_affine(coeffs: Mat, rhs: Vec, nvars: int) -> tuple[Vec, Mat] | None:
    """Solve coeffs . x = rhs exactly.

    Returns (particular solution, nullspace basis) or None when
    inconsistent.  With no equations the solution set is all of Q^nvars.
    """
    if not coeffs:
        basis = [[Fraction(int(i == j)) for j in range(nvars)] for i in range(nvars)]
        return [Fraction(0)] * nvars, basis
    aug = [row[:] + [b] for row, b in zip(coeffs, rhs)]
    mat, pivots = rref(aug)
    for row in mat:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    pivot_set = set(p for p in pivots if p < nvars)
    if nvars in pivots:
        return None
    free = [c for c in range(nvars) if c not in pivot_set]
    particular = [Fraction(0)] * nvars
    for r, c in enumerate(pivots):
        particular[c] = mat[r][-1]
    basis: Mat = []
    for fc in free:
        vec = [Fraction(0)] * nvars
        vec[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -mat[r][fc]
        basis.append(vec)
    return particular, basis


def solve_square(coeffs: Mat, rhs: Vec) -> Vec | None:
    """Unique solution of a k x k system, or None if singular."""
    k = len(coeffs)
    aug = [row[:] + [b] for row, b in zip(coeffs, rhs)]
    mat, pivots = rref(aug)
    if len(pivots) != k or any(p >= k for p in pivots):
        return None
    sol = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        sol[c] = mat[r][-1]
    return sol


def rank(vectors: Mat) -> int:
    if not vectors:
        return 0
    _, pivots = rref(vectors)
    return len(pivots)


def independent_rows(vectors: Mat) -> Mat:
    """A spanning subset of the rows, reduced to echelon form."""
    if not vectors:
        return []
    mat, pivots = rref(vectors)
    return [mat[i] for i in range(len(pivots))]
