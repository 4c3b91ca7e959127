"""Canonical forms, isomorphism, and the exhaustive enumerators."""

import itertools

import pytest

from effectalgebras import (
    SumTable,
    apply_permutation,
    are_isomorphic,
    canonical_form,
    catalog,
    enumerate_algebras,
    enumerate_brute_force,
    is_canonical,
    validate,
    violations,
)

TABLE1_COUNTS = {2: 1, 3: 1, 4: 3, 5: 4, 6: 10}


@pytest.mark.parametrize("n,count", sorted(TABLE1_COUNTS.items()))
def test_enumeration_counts(enumerations, n, count):
    assert enumerations(n).count == count


def test_enumeration_outputs_are_canonical_and_valid(enumerations):
    for n in range(2, 7):
        result = enumerations(n)
        for algebra in result.algebras:
            assert is_canonical(algebra.table)
            assert violations(algebra.table) == []
        cells = [a.table.cells for a in result.algebras]
        assert cells == sorted(cells)
        assert len(set(cells)) == len(cells)


def test_enumeration_covers_catalog_exactly(enumerations, entries):
    for n in range(2, 7):
        enumerated = {a.table.cells for a in enumerations(n).algebras}
        named = {
            canonical_form(e.algebra.table).table.cells
            for e in entries
            if e.algebra.n == n
        }
        assert enumerated == named


def test_enumerate_rejects_tiny_order():
    with pytest.raises(ValueError):
        enumerate_algebras(1)


def test_parallel_enumeration_matches_sequential():
    for n in (5, 6):
        seq = enumerate_algebras(n)
        par = enumerate_algebras(n, jobs=2)
        assert [a.table.cells for a in seq.algebras] == [a.table.cells for a in par.algebras]


def test_count_only_drops_algebras():
    result = enumerate_algebras(5, count_only=True)
    assert result.count == 4
    assert result.algebras == ()


def test_brute_force_oracle_agrees_small(enumerations):
    for n in range(2, 7):
        reps = enumerate_brute_force(n)
        naive = sorted(canonical_form(t).table.cells for t in reps)
        orderly = sorted(a.table.cells for a in enumerations(n).algebras)
        assert naive == orderly


def test_identity_permutation_is_noop():
    t = catalog.table("S6")
    assert apply_permutation(t, range(6)).cells == t.cells


def test_permutation_round_trip():
    t = catalog.table("E6(7)")
    perm = (0, 1, 4, 2, 5, 3)
    inverse = [0] * 6
    for old, new in enumerate(perm):
        inverse[new] = old
    moved = apply_permutation(t, perm)
    assert moved.cells != t.cells
    assert apply_permutation(moved, inverse).cells == t.cells


def test_swap_matches_published_relabeling():
    # the five-element weak-scale table and its printed e<->f relabeling
    original = catalog.table("E5(3)")
    relabeled = SumTable.from_rows([[1, -1, -1], [-1, 4, 1], [-1, 1, -1]])
    swap = (0, 1, 3, 2, 4)
    assert apply_permutation(original, swap).cells == relabeled.cells
    assert canonical_form(original).table.cells == canonical_form(relabeled).table.cells


def test_bad_permutations_rejected():
    t = catalog.table("S4")
    for perm in ((0, 1, 2), (1, 0, 2, 3), (0, 1, 2, 2)):
        with pytest.raises(Exception):
            apply_permutation(t, perm)


def test_canonical_form_idempotent(entries):
    for entry in entries:
        first = canonical_form(entry.algebra.table)
        again = canonical_form(first.table)
        assert first.table.cells == again.table.cells
        assert again.permutation == tuple(range(entry.algebra.n))


def test_canonical_permutation_witnesses_itself(entries):
    for entry in entries:
        cf = canonical_form(entry.algebra.table)
        assert apply_permutation(entry.algebra.table, cf.permutation).cells == cf.table.cells


def test_fully_symmetric_table_is_its_own_canonical_form():
    d4 = catalog.table("D4")
    for perm in itertools.permutations((2, 3)):
        assert apply_permutation(d4, (0, 1) + perm).cells == d4.cells
    assert canonical_form(d4).table.cells == d4.cells


def test_shuffled_scale_recanonicalizes():
    s6 = catalog.table("S6")
    base = canonical_form(s6).table.cells
    for perm in itertools.permutations(range(2, 6)):
        shuffled = apply_permutation(s6, (0, 1) + perm)
        assert canonical_form(shuffled).table.cells == base


def test_are_isomorphic():
    p4 = catalog.table("P4")
    assert are_isomorphic(p4, p4)
    assert not are_isomorphic(p4, catalog.table("D4"))
    assert not are_isomorphic(p4, catalog.table("S6"))
    shuffled = apply_permutation(catalog.table("E6(9)"), (0, 1, 5, 4, 3, 2))
    assert are_isomorphic(shuffled, catalog.table("E6(9)"))


def test_validation_commutes_with_relabeling():
    spade = catalog.counterexamples()["spade5c"]
    good = catalog.table("S5")
    for perm in itertools.permutations(range(2, 5)):
        full = (0, 1) + perm
        assert violations(apply_permutation(good, full)) == []
        assert violations(apply_permutation(spade, full)) != []


def test_count_defined_is_permutation_invariant():
    for name in ("S6", "E6(7)", "E8"):
        algebra = catalog.entry(name).algebra
        base = algebra.count_defined()
        n = algebra.n
        for perm in itertools.islice(itertools.permutations(range(2, n)), 10):
            moved = validate(apply_permutation(algebra.table, (0, 1) + perm))
            assert moved.count_defined() == base


def test_stats_are_populated(enumerations):
    stats = enumerations(6).stats
    assert stats.nodes > 0
    assert stats.leaves > 0
    assert "associativity" in stats.pruned
