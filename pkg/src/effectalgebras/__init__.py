"""Finite effect algebras as sum tables.

Validation of the defining rules, isomorph-free enumeration, exact
state-space analysis and quantum representability, model verification,
and Cartesian composition.
"""

from .core import (
    ONE,
    UNDEFINED,
    UNIT,
    ZERO,
    EffectAlgebra,
    InvalidTableError,
    MalformedTableError,
    SumTable,
    Violation,
    ViolationKind,
    check_derived_laws,
    validate,
    violations,
)
from .enumeration import (
    CanonicalForm,
    EnumerationResult,
    apply_permutation,
    are_isomorphic,
    canonical_form,
    enumerate_algebras,
    enumerate_brute_force,
    is_canonical,
)
from .classify import (
    Classification,
    classify,
    max_defined,
    min_defined,
    not_quantum_witness,
    sparse_count,
)
from .compose import CompositeAlgebra, component, compose, is_composite
from .states import (
    State,
    StateAnalysis,
    StatePolytope,
    analyze,
    fuzzy_embedding,
    is_order_determining,
    is_quantum,
    is_separating,
    marginal_state,
    min_fuzzy_dimension,
    product_state,
    state_space,
)
from .models import (
    Cyc,
    FuzzyAssignment,
    ModelVerdict,
    MultiplicativeModel,
    verify_fuzzy,
    verify_fuzzy_dimension_bound,
    verify_multiplicative,
    verify_quantum_matrices,
)
from . import catalog, formats

__all__ = [name for name in dir() if not name.startswith("_")]
