"""Exact counting toolkit for finite relational structures.

Counts homomorphisms, surjective homomorphisms and condensations; expands
the surjective and condensation counters over the hom basis with exact
integer coefficients; verifies the associated matrix identities on finite
class slices; and recovers individual hom counts from black-box
linear-combination oracles via distinguishers and Vandermonde systems.

Everything is exact (arbitrary-precision integers and rationals) and
verifiable against brute force at small sizes; no floating point is used
anywhere.
"""

from .basis import (
    LinearCombination,
    MatrixIdentityReport,
    MatrixView,
    evaluate,
    expand_condens,
    expand_surjhom,
    matrix_views,
    mobius_expand_surjhom,
    verify_matrix_identities,
)
from .counting import (
    count_condens,
    count_hom,
    count_surjhom,
    count_surjhom_inclusion_exclusion,
    exists_hom,
    hom_equivalent,
)
from .errors import (
    ArityMismatch,
    DuplicateElement,
    DuplicateNodes,
    EmptyUniverse,
    ForeignElement,
    FormatError,
    HomcountError,
    NotEquivalentClass,
    OracleInconsistent,
    ProbeExhausted,
    SignatureMismatch,
    SliceTooLarge,
    UnknownSymbol,
    ValidationError,
    ZeroCopies,
)
from .interpolation import (
    CountOracle,
    VandermondeSystem,
    extract_hom_values,
    independence_probe,
    lovasz_distinguisher,
    lovasz_separator,
    solve_vandermonde,
)
from .structures import (
    Signature,
    Structure,
    canonical_form,
    canonical_key,
    deducts_count,
    disjoint_union,
    enumerate_deducts,
    enumerate_induced_substructures,
    enumerate_structures,
    indsub_count,
    induced_substructure,
    is_isomorphic,
    n_fold_union,
    sort_key,
    total_size,
    validate,
)

__version__ = "0.1.0"
