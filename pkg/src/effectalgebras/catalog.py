"""Constructors and a fixture corpus for the named small effect algebras.

The corpus holds every algebra of order 2..6 (nineteen in total), the
eight-element algebra E8 whose quantum dimension beats its unit-cube
dimension, and the nine-element stateless algebra R9 (Riecanova's
construction).  Each entry carries the properties recorded for it
(quantum flag, state counts and values, defined-sum counts, family data);
checking the computed values against these is the integration test.

`counterexamples` collects grids that look plausible but fail
associativity, plus the six-point subset of [0, 1] that is closed under
complements yet is not an effect algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import ONE, UNDEFINED, EffectAlgebra, SumTable, validate
from .enumeration import canonical_form
from .models import Cyc, FuzzyAssignment, MultiplicativeModel

_ = UNDEFINED  # keeps the grids below readable


def make_scale(n: int) -> EffectAlgebra:
    """The unique totally ordered algebra of order n: the multiples of
    1/(n-1), summing where the total stays at most 1."""
    if n < 2:
        raise ValueError("order must be at least 2")
    grid = []
    for e in range(2, n):
        row = []
        for f in range(2, n):
            steps = (e - 1) + (f - 1)
            if steps < n - 1:
                row.append(steps + 1)
            elif steps == n - 1:
                row.append(ONE)
            else:
                row.append(UNDEFINED)
        grid.append(tuple(row))
    return validate(SumTable(n, tuple(grid)))


def make_sparse(k: int, ell: int) -> EffectAlgebra:
    """The sparse algebra with k self-complementary effects and ell
    complement pairs; nothing else sums.  Order is 2 + k + 2*ell."""
    if k < 0 or ell < 0 or k + 2 * ell < 1:
        raise ValueError("need k, ell >= 0 with at least one nontrivial effect")
    n = 2 + k + 2 * ell
    m = n - 2
    grid = [[UNDEFINED] * m for _ in range(m)]
    for i in range(k):
        grid[i][i] = ONE
    for j in range(ell):
        a, b = k + 2 * j, k + 2 * j + 1
        grid[a][b] = grid[b][a] = ONE
    return validate(SumTable(n, tuple(tuple(r) for r in grid)))


_F = Fraction

_TABLES: dict[str, list[list[int]]] = {
    "S2": [],
    "S3": [[1]],
    "D4": [[1, _], [_, 1]],
    "P4": [[_, 1], [1, _]],
    "S4": [[3, 1], [1, _]],
    "D5": [[1, _, _], [_, 1, _], [_, _, 1]],
    "E5(1,1)": [[1, _, _], [_, _, 1], [_, 1, _]],
    "E5(3)": [[4, _, 1], [_, 1, _], [1, _, _]],
    "S5": [[3, 4, 1], [4, 1, _], [1, _, _]],
    "D6": [[1, _, _, _], [_, 1, _, _], [_, _, 1, _], [_, _, _, 1]],
    "P6": [[_, 1, _, _], [1, _, _, _], [_, _, _, 1], [_, _, 1, _]],
    "E6(2,1)": [[1, _, _, _], [_, 1, _, _], [_, _, _, 1], [_, _, 1, _]],
    "E6(4)": [[3, 1, _, _], [1, _, _, _], [_, _, _, 1], [_, _, 1, _]],
    "E6(5)": [[3, 1, _, _], [1, _, _, _], [_, _, 1, _], [_, _, _, 1]],
    "E6(6)": [[3, 1, _, _], [1, _, _, _], [_, _, 5, 1], [_, _, 1, _]],
    "E6(7)": [[_, 4, _, 1], [4, 5, 1, _], [_, 1, _, _], [1, _, _, _]],
    "E6(8)": [[3, 4, 1, _], [4, 1, _, _], [1, _, _, _], [_, _, _, 1]],
    "E6(9)": [[4, 5, 1, _], [5, 4, _, 1], [1, _, _, _], [_, 1, _, _]],
    "S6": [[3, 4, 5, 1], [4, 5, 1, _], [5, 1, _, _], [1, _, _, _]],
    "E8": [
        [_, 5, 6, _, _, 1],
        [5, _, 7, _, 1, _],
        [6, 7, _, 1, _, _],
        [_, _, 1, _, _, _],
        [_, 1, _, _, _, _],
        [1, _, _, _, _, _],
    ],
    "R9": [
        [5, 7, 8, 1, _, _, _],
        [7, 6, 5, _, 8, _, 1],
        [8, 5, 7, _, _, 1, _],
        [1, _, _, _, _, _, _],
        [_, 8, _, _, 1, _, _],
        [_, _, 1, _, _, _, _],
        [_, 1, _, _, _, _, _],
    ],
}

# The eight-element composite of the two- and four-element scales, as an
# explicit grid; used to pin down composition against a fixed labeling.
S2_TIMES_S4_GRID: list[list[int]] = [
    [3, 4, _, 6, 7, 1],
    [4, _, _, 7, 1, _],
    [_, _, _, 1, _, _],
    [6, 7, 1, _, _, _],
    [7, 1, _, _, _, _],
    [1, _, _, _, _, _],
]

ALIASES = {
    "D3": "S3",
    "E4(1)": "D4",
    "E4(2)": "P4",
    "E4(3)": "S4",
    "E5(1)": "D5",
    "E5(2)": "E5(1,1)",
    "E5(4)": "S5",
    "E6(1)": "D6",
    "E6(2)": "P6",
    "E6(3)": "E6(2,1)",
    "E6(10)": "S6",
    "S2xS2": "P4",
    "S2xS3": "E6(7)",
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: EffectAlgebra
    description: str
    expected: dict = field(default_factory=dict)


def _unique(*values) -> dict:
    return {"states": "unique", "state_values": tuple(_F(v) for v in values)}


_DESCRIPTIONS = {
    "S2": "two-element scale algebra {0, 1}",
    "S3": "three-element scale algebra; also the one-self-complement sparse algebra",
    "D4": "sparse, two self-complementary effects",
    "P4": "sparse, one complement pair; composite of two two-element scales",
    "S4": "four-element scale algebra",
    "D5": "sparse, three self-complementary effects",
    "E5(1,1)": "sparse, one self-complement and one complement pair",
    "E5(3)": "five-element algebra realizable in [0,1] only weakly",
    "S5": "five-element scale algebra",
    "D6": "sparse, four self-complementary effects",
    "P6": "sparse, two complement pairs",
    "E6(2,1)": "sparse, two self-complements and one complement pair",
    "E6(4)": "six-element algebra with a doubled generator and a free pair",
    "E6(5)": "six-element algebra, doubled generator plus two self-complements",
    "E6(6)": "six-element algebra with two doubled generators",
    "E6(7)": "composite of the two- and three-element scales",
    "E6(8)": "six-element algebra with a length-three chain and a self-complement",
    "E6(9)": "six-element algebra whose two generators share their double",
    "S6": "six-element scale algebra",
    "E8": "eight-element algebra: quantum in dimension 2, unit-cube only in dimension 3",
    "R9": "nine-element algebra with no states at all (Riecanova)",
}

_EXPECTED: dict[str, dict] = {
    "S2": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 0, "scale": True, "sparse": (0, 0), "composite": None,
           "witness": None, "min_fuzzy_dim": 1, **_unique()},
    "S3": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 1, "scale": True, "sparse": (1, 0), "composite": None,
           "witness": None, "min_fuzzy_dim": 1, **_unique("1/2")},
    "D4": {"quantum": False, "separating": False, "order_determining": False,
           "defined": 2, "scale": False, "sparse": (2, 0), "composite": None,
           "witness": (2, 3, 2), **_unique("1/2", "1/2")},
    "P4": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 2, "scale": False, "sparse": (0, 1), "composite": ("S2", "S2"),
           "witness": None, "min_fuzzy_dim": 2, "states": "many", "dimension": 1},
    "S4": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 3, "scale": True, "sparse": None, "composite": None,
           "witness": None, "min_fuzzy_dim": 1, **_unique("1/3", "2/3")},
    "D5": {"quantum": False, "separating": False, "order_determining": False,
           "defined": 3, "scale": False, "sparse": (3, 0), "composite": None,
           "witness": (2, 3, 2), **_unique("1/2", "1/2", "1/2")},
    "E5(1,1)": {"quantum": True, "separating": True, "order_determining": True,
                "defined": 3, "scale": False, "sparse": (1, 1), "composite": None,
                "witness": None, "min_fuzzy_dim": 2, "states": "many", "dimension": 1},
    "E5(3)": {"quantum": False, "separating": True, "order_determining": False,
              "defined": 4, "scale": False, "sparse": None, "composite": None,
              "witness": None, **_unique("1/3", "1/2", "2/3")},
    "S5": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 6, "scale": True, "sparse": None, "composite": None,
           "witness": None, "min_fuzzy_dim": 1, **_unique("1/4", "1/2", "3/4")},
    "D6": {"quantum": False, "separating": False, "order_determining": False,
           "defined": 4, "scale": False, "sparse": (4, 0), "composite": None,
           "witness": (2, 3, 2), **_unique("1/2", "1/2", "1/2", "1/2")},
    # min_fuzzy_dim is the vertex-subset minimum; for P6 all four vertices
    # are needed even though a two-coordinate model with interior states exists
    "P6": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 4, "scale": False, "sparse": (0, 2), "composite": None,
           "witness": None, "min_fuzzy_dim": 4, "states": "many", "dimension": 2},
    "E6(2,1)": {"quantum": False, "separating": False, "order_determining": False,
                "defined": 4, "scale": False, "sparse": (2, 1), "composite": None,
                "witness": (2, 3, 2), "states": "many", "dimension": 1},
    "E6(4)": {"quantum": True, "separating": True, "order_determining": True,
              "defined": 5, "scale": False, "sparse": None, "composite": None,
              "witness": None, "min_fuzzy_dim": 2, "states": "many", "dimension": 1},
    "E6(5)": {"quantum": False, "separating": False, "order_determining": False,
              "defined": 5, "scale": False, "sparse": None, "composite": None,
              "witness": (4, 5, 2), **_unique("1/3", "2/3", "1/2", "1/2")},
    "E6(6)": {"quantum": False, "separating": False, "order_determining": False,
              "defined": 6, "scale": False, "sparse": None, "composite": None,
              "witness": (2, 4, 3), **_unique("1/3", "2/3", "1/3", "2/3")},
    "E6(7)": {"quantum": True, "separating": True, "order_determining": True,
              "defined": 7, "scale": False, "sparse": None, "composite": ("S2", "S3"),
              "witness": None, "min_fuzzy_dim": 2, "states": "many", "dimension": 1},
    "E6(8)": {"quantum": False, "separating": False, "order_determining": False,
              "defined": 7, "scale": False, "sparse": None, "composite": None,
              "witness": (3, 5, 2), **_unique("1/4", "1/2", "3/4", "1/2")},
    "E6(9)": {"quantum": False, "separating": False, "order_determining": False,
              "defined": 8, "scale": False, "sparse": None, "composite": None,
              "witness": (2, 3, 2), **_unique("1/3", "1/3", "2/3", "2/3")},
    "S6": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 10, "scale": True, "sparse": None, "composite": None,
           "witness": None, "min_fuzzy_dim": 1,
           **_unique("1/5", "2/5", "3/5", "4/5")},
    "E8": {"quantum": True, "separating": True, "order_determining": True,
           "defined": 12, "scale": False, "sparse": None,
           "witness": None, "min_fuzzy_dim": 3, "states": "many", "dimension": 2},
    "R9": {"quantum": False, "separating": False, "order_determining": False,
           "defined": 18, "scale": False, "sparse": None,
           "witness": (2, 4, 3), "states": "none"},
}


def table(name: str) -> SumTable:
    """The raw sum table of a catalog entry (aliases allowed)."""
    key = ALIASES.get(name, name)
    if key not in _TABLES:
        raise KeyError(f"unknown catalog name: {name}")
    return SumTable.from_rows(_TABLES[key])


def names() -> list[str]:
    return list(_TABLES)


_ENTRY_CACHE: dict[str, CatalogEntry] = {}


def entry(name: str) -> CatalogEntry:
    key = ALIASES.get(name, name)
    if key not in _ENTRY_CACHE:
        _ENTRY_CACHE[key] = CatalogEntry(
            name=key,
            algebra=validate(table(key)),
            description=_DESCRIPTIONS[key],
            expected=dict(_EXPECTED[key]),
        )
    return _ENTRY_CACHE[key]


def entries() -> list[CatalogEntry]:
    return [entry(name) for name in _TABLES]


_CANONICAL_NAMES: dict[tuple[int, tuple], str] | None = None


def name_by_canonical_cells(n: int, cells) -> str | None:
    """Resolve an algebra to its catalog name via canonical-form lookup."""
    global _CANONICAL_NAMES
    if _CANONICAL_NAMES is None:
        _CANONICAL_NAMES = {}
        for name in _TABLES:
            t = table(name)
            key = (t.n, canonical_form(t).table.cells)
            _CANONICAL_NAMES[key] = name
    return _CANONICAL_NAMES.get((n, tuple(cells)))


def s2_times_s4_table() -> SumTable:
    """The printed eight-element composite of the order-2 and order-4
    scales, in its published labeling."""
    return SumTable.from_rows(S2_TIMES_S4_GRID)


def counterexamples() -> dict[str, SumTable]:
    """Plausible-looking grids that are not effect algebras.

    `spade4` breaks associativity on (e, e, f); `spade5a`..`spade5c`
    break it (and the local filling rules) in three different ways;
    `sixth-steps` encodes {0, 1/6, 1/3, 2/3, 5/6, 1} with sums defined
    when the total lands in the set, which fails associativity on
    (e, e, f).
    """
    return {
        "spade4": SumTable.from_rows([[3, 1], [1, 2]]),
        "spade5a": SumTable.from_rows([[1, 4, _], [4, 1, _], [_, _, 1]]),
        "spade5b": SumTable.from_rows([[_, 4, 1], [4, 1, _], [1, _, _]]),
        "spade5c": SumTable.from_rows([[3, _, 1], [_, 1, _], [1, _, _]]),
        "sixth-steps": SumTable.from_rows([
            [3, _, 5, 1],
            [_, 4, 1, _],
            [5, 1, _, _],
            [1, _, _, _],
        ]),
    }


def _cyc(re=0, im=0, omega=0) -> Cyc:
    return Cyc.from_parts(re, im, omega)


def _mult(vectors: dict[int, tuple]) -> MultiplicativeModel:
    return MultiplicativeModel({
        e: tuple(v if isinstance(v, Cyc) else _cyc(v) for v in vec)
        for e, vec in vectors.items()
    })


def _fuzzy(vectors: dict[int, tuple]) -> FuzzyAssignment:
    return FuzzyAssignment({
        e: tuple(Fraction(c) for c in vec) for e, vec in vectors.items()
    })


def _sparse_vector_model(k: int, ell: int) -> MultiplicativeModel:
    """The paper-style vector model of a sparse algebra: entrywise
    multiplication on k + ell coordinates, with -2 marking each
    self-complement and -2i / 2i marking each complement pair."""
    width = k + ell
    vectors: dict[int, tuple] = {
        0: tuple(_cyc(1) for _ in range(width)),
        1: tuple(_cyc(4) for _ in range(width)),
    }
    for i in range(k):
        vectors[2 + i] = tuple(
            _cyc(-2) if c == i else _cyc(2) for c in range(width)
        )
    for j in range(ell):
        a, b = 2 + k + 2 * j, 2 + k + 2 * j + 1
        vectors[a] = tuple(
            _cyc(0, -2) if c == k + j else _cyc(2) for c in range(width)
        )
        vectors[b] = tuple(
            _cyc(0, 2) if c == k + j else _cyc(2) for c in range(width)
        )
    return _mult(vectors)


def _scale_fuzzy(n: int) -> FuzzyAssignment:
    return _fuzzy({e: (Fraction(max(e - 1, 0) if e else 0, n - 1),)
                   for e in range(n)} | {1: (Fraction(1),)})


def e8_quantum_matrices() -> dict[int, np.ndarray]:
    """The dimension-2 hermitian realization of E8: three rank-one-style
    generators with eigenvalues 0 and 2/3, plus their pairwise sums."""
    r = math.sqrt(3)
    E = np.array([[2, 0], [0, 0]]) / 3
    F = np.array([[1, r], [r, 3]]) / 6
    G = np.array([[1, -r], [-r, 3]]) / 6
    return {
        0: np.zeros((2, 2)),
        1: np.eye(2),
        2: E, 3: F, 4: G,
        5: E + F, 6: E + G, 7: F + G,
    }


def known_models(name: str) -> list[dict]:
    """The concrete models bundled for one entry, as kwargs for the
    matching verifier in `models`."""
    key = ALIASES.get(name, name)
    out: list[dict] = []
    if key == "D4":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(2, 0)})
    if key == "D5":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(3, 0)})
    if key == "D6":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(4, 0)})
    if key == "E5(1,1)":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(1, 1)})
    if key == "E6(2,1)":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(2, 1)})
    if key == "P4":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(0, 1)})
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0), 1: (1, 1), 2: (1, 0), 3: (0, 1)})})
    if key == "P6":
        out.append({"kind": "multiplicative", "model": _sparse_vector_model(0, 2)})
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0), 1: (1, 1),
            2: ("1/3", "2/3"), 3: ("2/3", "1/3"),
            4: ("1/4", "3/4"), 5: ("3/4", "1/4")})})
    if key == "E5(1,1)":
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0), 1: (1, 1),
            2: ("1/2", "1/2"), 3: (1, 0), 4: (0, 1)})})
    if key == "E5(3)":
        out.append({"kind": "fuzzy", "weak": True, "model": _fuzzy({
            0: (0,), 1: (1,), 2: ("1/3",), 3: ("1/2",), 4: ("2/3",)})})
    if key == "E6(4)":
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0), 1: (1, 1),
            2: ("1/3", "1/3"), 3: ("2/3", "2/3"),
            4: ("1/4", "3/4"), 5: ("3/4", "1/4")})})
    if key == "E6(5)":
        out.append({"kind": "multiplicative", "model": _mult({
            0: (_cyc(1),), 1: (_cyc(64),),
            2: (_cyc(omega=4),), 3: (_cyc(re=-16, omega=-16),),
            4: (_cyc(8),), 5: (_cyc(-8),)})})
    if key == "E6(6)":
        out.append({"kind": "multiplicative", "model": _mult({
            0: (_cyc(1),), 1: (_cyc(8),),
            2: (_cyc(omega=2),), 3: (_cyc(re=-4, omega=-4),),
            4: (_cyc(re=-2, omega=-2),), 5: (_cyc(omega=4),)})})
    if key == "E6(7)":
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0), 1: (1, 1),
            2: ("3/4", "1/4"), 3: ("1/8", "3/8"),
            4: ("7/8", "5/8"), 5: ("1/4", "3/4")})})
    if key == "E6(8)":
        out.append({"kind": "multiplicative", "model": _mult({
            0: (_cyc(1),), 1: (_cyc(16),),
            2: (_cyc(im=2),), 3: (_cyc(-4),),
            4: (_cyc(im=-8),), 5: (_cyc(4),)})})
    if key == "E6(9)":
        out.append({"kind": "multiplicative", "model": _mult({
            0: (_cyc(1),), 1: (_cyc(8),),
            2: (_cyc(2),), 3: (_cyc(-2),),
            4: (_cyc(4),), 5: (_cyc(-4),)})})
    if key == "E8":
        out.append({"kind": "fuzzy", "model": _fuzzy({
            0: (0, 0, 0), 1: (1, 1, 1),
            2: (1, 0, 0), 3: (0, 1, 0), 4: (0, 0, 1),
            5: (1, 1, 0), 6: (1, 0, 1), 7: (0, 1, 1)})})
        out.append({"kind": "quantum", "matrices": e8_quantum_matrices()})
    if key in ("S2", "S3", "S4", "S5", "S6"):
        out.append({"kind": "fuzzy", "model": _scale_fuzzy(int(key[1:]))})
    return out
