"""Relabeling, canonical forms, and exhaustive enumeration of sum tables.

Two tables describe the same effect algebra exactly when one is obtained
from the other by permuting the nontrivial elements (rows, columns and
cell values together).  The canonical form of a table is the
lexicographically least flattened upper triangle over all such
relabelings, under the cell order UNDEFINED < ONE < 2 < 3 < ...; the int
encoding of cells compares in exactly that order.

Enumeration does a backtracking search over the upper-triangle cells with
incremental rule checks, and keeps only tables that are already in
canonical labeling (orderly generation).  `enumerate_brute_force` is a
deliberately separate, slower enumerator used to cross-check counts: it
knows nothing about the derived pruning rules or canonical forms, fills
cells in a different order, and deduplicates by trying all permutations.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    ONE,
    UNDEFINED,
    EffectAlgebra,
    MalformedTableError,
    SumTable,
    validate,
)

_UNK = -9  # search-only sentinel: cell not assigned yet

Cells = tuple[tuple[int, ...], ...]


def apply_permutation(table: SumTable, perm) -> SumTable:
    """Relabel a table by perm, a length-n mapping old id -> new id that
    fixes 0 and 1.  Rows, columns and cell values move together; labels
    follow their elements."""
    n = table.n
    perm = tuple(perm)
    if len(perm) != n or perm[0] != 0 or perm[1] != 1 or sorted(perm) != list(range(n)):
        raise MalformedTableError("perm must be a bijection on 0..n-1 fixing 0 and 1")
    m = n - 2
    new = [[UNDEFINED] * m for _ in range(m)]
    for i in range(2, n):
        for j in range(2, n):
            v = table.cells[i - 2][j - 2]
            if v >= 2:
                v = perm[v]
            new[perm[i] - 2][perm[j] - 2] = v
    labels = [""] * n
    for e in range(n):
        labels[perm[e]] = table.labels[e]
    return SumTable(n, tuple(tuple(r) for r in new), tuple(labels))


def flatten_upper(cells: Cells) -> tuple[int, ...]:
    """Row-major upper triangle, the sort key for tables of equal order."""
    m = len(cells)
    return tuple(cells[i][j] for i in range(m) for j in range(i, m))


@lru_cache(maxsize=None)
def _perm_pool(n: int) -> tuple:
    """All (sigma, tau) pairs over nontrivial ids: sigma[k] is the new id
    of old id k+2, tau[k] is the old id landing on new id k+2."""
    out = []
    for sig in itertools.permutations(range(2, n)):
        tau = [0] * (n - 2)
        for k, newid in enumerate(sig):
            tau[newid - 2] = k + 2
        out.append((sig, tuple(tau)))
    return tuple(out)


@dataclass(frozen=True)
class CanonicalForm:
    """A canonically labeled table plus the relabeling that produced it."""

    table: SumTable
    permutation: tuple[int, ...]


def canonical_form(table: SumTable) -> CanonicalForm:
    """Minimize the flattened upper triangle over all relabelings.

    Ties in table value are broken by the lexicographically least
    permutation (as the tuple of images of 2..n-1), so the witnessing
    relabeling is deterministic too.
    """
    n = table.n
    m = n - 2
    cells = table.cells
    best: list[int] | None = None
    best_sig: tuple[int, ...] | None = None
    for sig, tau in _perm_pool(n):
        cand: list[int] = []
        worse = False
        improved = best is None
        idx = 0
        for i in range(m):
            row = cells[tau[i] - 2]
            for j in range(i, m):
                v = row[tau[j] - 2]
                if v >= 2:
                    v = sig[v - 2]
                cand.append(v)
                if not improved:
                    b = best[idx]  # type: ignore[index]
                    if v < b:
                        improved = True
                    elif v > b:
                        worse = True
                        break
                idx += 1
            if worse:
                break
        if worse or not improved:
            continue
        best, best_sig = cand, sig
    if best is None:  # n == 2: empty grid, identity relabeling
        return CanonicalForm(SumTable(n, ()), (0, 1))
    grid = [[UNDEFINED] * m for _ in range(m)]
    pos = 0
    for i in range(m):
        for j in range(i, m):
            grid[i][j] = grid[j][i] = best[pos]
            pos += 1
    canon = SumTable(n, tuple(tuple(r) for r in grid))
    return CanonicalForm(canon, (0, 1) + best_sig)


def is_canonical(table: SumTable) -> bool:
    """True iff no relabeling yields a lexicographically smaller table."""
    n, m = table.n, table.n - 2
    if m <= 1:
        return True
    cells = table.cells
    flat = flatten_upper(cells)
    for sig, tau in _perm_pool(n):
        idx = 0
        verdict = 0
        for i in range(m):
            row = cells[tau[i] - 2]
            for j in range(i, m):
                v = row[tau[j] - 2]
                if v >= 2:
                    v = sig[v - 2]
                b = flat[idx]
                if v != b:
                    verdict = -1 if v < b else 1
                    break
                idx += 1
            if verdict:
                break
        if verdict == -1:
            return False
    return True


def are_isomorphic(a: SumTable, b: SumTable) -> bool:
    """Tables are isomorphic iff their canonical forms coincide."""
    if a.n != b.n:
        return False
    return canonical_form(a).table.cells == canonical_form(b).table.cells


@dataclass
class EnumerationStats:
    nodes: int = 0
    leaves: int = 0
    pruned: dict[str, int] = field(default_factory=dict)

    def bump(self, rule: str) -> None:
        self.pruned[rule] = self.pruned.get(rule, 0) + 1

    def merge(self, other: "EnumerationStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        for k, v in other.pruned.items():
            self.pruned[k] = self.pruned.get(k, 0) + v


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    count: int
    algebras: tuple[EffectAlgebra, ...]
    stats: EnumerationStats


def _triple_ok(cells, a: int, b: int, c: int) -> bool:
    """Check one associativity instance on a partially filled grid.

    a, b, c are row indices; cells hold public encoding or _UNK.  Returns
    False only when the triple is fully decided and inconsistent.
    """
    s = cells[a][b]
    if s == _UNK:
        lhs = _UNK
    elif s == UNDEFINED or s == ONE:
        lhs = UNDEFINED  # unit + nontrivial is never defined
    else:
        lhs = cells[s - 2][c]
    t = cells[b][c]
    if t == _UNK:
        rhs = _UNK
    elif t == UNDEFINED or t == ONE:
        rhs = UNDEFINED
    else:
        rhs = cells[a][t - 2]
    if lhs == _UNK or rhs == _UNK:
        return True
    if (lhs == UNDEFINED) != (rhs == UNDEFINED):
        return False
    return lhs == rhs


def _assoc_ok_after(cells, m: int, i: int, j: int) -> bool:
    """Re-check every associativity instance that involves cell (i, j)."""
    heads = ((i, j),) if i == j else ((i, j), (j, i))
    for a, b in heads:
        for c in range(m):
            if not _triple_ok(cells, a, b, c) or not _triple_ok(cells, c, a, b):
                return False
    # (i, j) may also serve as the outer cell (s, c) of some association
    for a in range(m):
        row = cells[a]
        for b in range(m):
            v = row[b]
            if v < 2:
                continue
            r = v - 2
            if r == i:
                if not _triple_ok(cells, a, b, j) or not _triple_ok(cells, j, a, b):
                    return False
            if r == j and j != i:
                if not _triple_ok(cells, a, b, i) or not _triple_ok(cells, i, a, b):
                    return False
    return True


def _pairs_ok(cells, comp, m: int) -> bool:
    """Defined pair (a, b) with a != b-complement forces the complement
    pair undefined.  Decidable instances only."""
    for a in range(m):
        ca = comp[a]
        if ca < 0:
            continue
        row = cells[a]
        for b in range(a, m):
            v = row[b]
            if v == _UNK or v == UNDEFINED or v == ONE:
                continue
            cb = comp[b]
            if cb < 0:
                continue
            w = cells[ca][cb]
            if w != _UNK and w != UNDEFINED:
                return False
    return True


def _search(n: int, *, derived: bool, column_major: bool,
            orderly: bool, stats: EnumerationStats,
            prefix: tuple[int, ...] = ()):
    """Yield the cell grids of all valid tables of order n found under the
    given rule set.  With orderly=True only canonically labeled grids are
    yielded; otherwise every valid labeling is."""
    m = n - 2
    if m == 0:
        stats.leaves += 1
        yield ()
        return
    if column_major:
        positions = [(i, j) for j in range(m) for i in range(j + 1)]
    else:
        positions = [(i, j) for i in range(m) for j in range(i, m)]
    total = len(positions)
    cells = [[_UNK] * m for _ in range(m)]
    ones = [0] * m
    unknown = [m] * m
    used = [0] * m      # bitmask of effect ids already present in the row
    comp = [-1] * m     # row index of the unit in this row, -1 if none yet
    undef = [0] * m     # diamonds per row so far
    max_defined_ordered = (n - 1) * (n - 2) // 2
    defined_ordered = 0

    def place(depth: int, i: int, j: int, v: int) -> list:
        """Assign and return an undo record."""
        nonlocal defined_ordered
        cells[i][j] = cells[j][i] = v
        rows = (i,) if i == j else (i, j)
        for r in rows:
            unknown[r] -= 1
        inc = 0
        if v != UNDEFINED:
            inc = 1 if i == j else 2
        else:
            for r in rows:
                undef[r] += 1
        defined_ordered += inc
        oldcomp = (comp[i], comp[j])
        if v == ONE:
            for r in rows:
                ones[r] += 1
            comp[i], comp[j] = j, i
        elif v >= 2:
            for r in rows:
                used[r] |= 1 << v
        return [i, j, v, inc, oldcomp]

    def unplace(rec) -> None:
        nonlocal defined_ordered
        i, j, v, inc, oldcomp = rec
        rows = (i,) if i == j else (i, j)
        cells[i][j] = cells[j][i] = _UNK
        for r in rows:
            unknown[r] += 1
        if v == UNDEFINED:
            for r in rows:
                undef[r] -= 1
        defined_ordered -= inc
        if v == ONE:
            for r in rows:
                ones[r] -= 1
            comp[i], comp[j] = oldcomp
        elif v >= 2:
            for r in rows:
                used[r] &= ~(1 << v)

    def candidates(i: int, j: int):
        need_one = (ones[i] == 0 and unknown[i] == 1) or \
                   (j != i and ones[j] == 0 and unknown[j] == 1)
        can_one = ones[i] == 0 and (j == i or ones[j] == 0)
        inc = 1 if i == j else 2
        room = defined_ordered + inc <= max_defined_ordered
        if need_one:
            if can_one and room:
                yield ONE
            elif not room:
                stats.bump("count-bound")
            else:
                stats.bump("one-per-row")
            return
        yield UNDEFINED
        if not room:
            stats.bump("count-bound")
            return
        if can_one:
            yield ONE
        blocked = (1 << (i + 2)) | (1 << (j + 2))
        if derived:
            blocked |= used[i] | used[j]
        for v in range(2, n):
            if not blocked & (1 << v):
                yield v

    def full_rows_ok() -> bool:
        full = sum(1 for r in range(m) if unknown[r] == 0 and undef[r] == 0)
        return full <= 1

    def walk(depth: int):
        if depth == total:
            stats.leaves += 1
            yield tuple(tuple(r) for r in cells)
            return
        i, j = positions[depth]
        if depth < len(prefix):
            values = (prefix[depth],)
        else:
            values = candidates(i, j)
        for v in values:
            stats.nodes += 1
            rec = place(depth, i, j, v)
            ok = _assoc_ok_after(cells, m, i, j)
            if not ok:
                stats.bump("associativity")
            if ok and derived:
                if not _pairs_ok(cells, comp, m):
                    ok = False
                    stats.bump("undefined-pair")
                elif not full_rows_ok():
                    ok = False
                    stats.bump("full-rows")
            if ok:
                yield from walk(depth + 1)
            unplace(rec)

    for grid in walk(0):
        if orderly and not is_canonical(SumTable(n, grid)):
            stats.bump("non-canonical")
            continue
        yield grid


def _grids_for_prefix(args) -> tuple[list[Cells], EnumerationStats]:
    n, prefix, derived, orderly = args
    stats = EnumerationStats()
    grids = list(_search(n, derived=derived, column_major=False,
                         orderly=orderly, stats=stats, prefix=prefix))
    return grids, stats


def _first_row_prefixes(n: int) -> list[tuple[int, ...]]:
    """All consistent assignments of the first table row, used to split
    the search for parallel runs."""
    m = n - 2
    stats = EnumerationStats()
    prefixes: list[tuple[int, ...]] = []

    def collect(grid_iter):
        for grid in grid_iter:
            prefixes.append(tuple(grid[0][j] for j in range(m)))

    # reuse the search machinery, cut off after the first row
    out = []
    stack: list[tuple[int, ...]] = []

    def rec(j: int, cells_row: list[int]):
        if j == m:
            out.append(tuple(cells_row))
            return
        ones_used = ONE in cells_row
        last_chance = j == m - 1 and not ones_used
        opts = []
        if not last_chance:
            opts.append(UNDEFINED)
        if not ones_used:
            opts.append(ONE)
        if not last_chance:
            for v in range(2, n):
                if v != 2 and v != j + 2 and v not in cells_row:
                    opts.append(v)
        for v in opts:
            cells_row.append(v)
            rec(j + 1, cells_row)
            cells_row.pop()

    rec(0, [])
    return out


def enumerate_algebras(n: int, *, count_only: bool = False,
                       jobs: int = 1) -> EnumerationResult:
    """All effect algebras of order n, one canonical table per class,
    sorted by the canonical order on tables.

    Output is deterministic and identical for any jobs value; parallel
    runs split the search on first-row assignments and re-sort.
    """
    if n < 2:
        raise ValueError("order must be at least 2")
    stats = EnumerationStats()
    if jobs > 1 and n >= 4:
        prefixes = _first_row_prefixes(n)
        grids: list[Cells] = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            work = [(n, p, True, True) for p in prefixes]
            for part, part_stats in pool.map(_grids_for_prefix, work):
                grids.extend(part)
                stats.merge(part_stats)
    else:
        grids = list(_search(n, derived=True, column_major=False,
                             orderly=True, stats=stats))
    grids.sort(key=flatten_upper)
    algebras = tuple(validate(SumTable(n, g)) for g in grids)
    return EnumerationResult(
        n=n,
        count=len(algebras),
        algebras=() if count_only else algebras,
        stats=stats,
    )


def _row_profile(cells: Cells) -> tuple:
    """Cheap permutation invariant used to bucket candidates before the
    expensive pairwise isomorphism test."""
    m = len(cells)
    rows = sorted(
        (row.count(UNDEFINED), row.count(ONE),
         cells[r][r] == ONE, cells[r][r] == UNDEFINED)
        for r, row in enumerate(cells)
    )
    return (tuple(rows),)


def _isomorphic_by_search(a: Cells, b: Cells, n: int) -> bool:
    """Direct isomorphism test: try every relabeling of a against b."""
    m = n - 2
    if m == 0:
        return True
    for sig, tau in _perm_pool(n):
        match = True
        for i in range(m):
            row = a[tau[i] - 2]
            brow = b[i]
            for j in range(m):
                v = row[tau[j] - 2]
                if v >= 2:
                    v = sig[v - 2]
                if v != brow[j]:
                    match = False
                    break
            if not match:
                break
        if match:
            return True
    return False


def enumerate_brute_force(n: int) -> list[SumTable]:
    """Independent oracle enumerator: column-major fill, no derived
    pruning rules, deduplication by all-permutations search.  Returns one
    representative table per isomorphism class (first found)."""
    if n < 2:
        raise ValueError("order must be at least 2")
    stats = EnumerationStats()
    buckets: dict[tuple, list[Cells]] = {}
    reps: list[SumTable] = []
    for grid in _search(n, derived=False, column_major=True,
                        orderly=False, stats=stats):
        key = _row_profile(grid)
        known = buckets.setdefault(key, [])
        if any(_isomorphic_by_search(grid, other, n) for other in known):
            continue
        known.append(grid)
        reps.append(SumTable(n, grid))
    for rep in reps:
        validate(rep)
    return reps
