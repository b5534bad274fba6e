"""Exact orbit classification and point counting over prime fields."""

__version__ = "0.1.0"

from .partitions import (  # noqa: F401
    Bipartition,
    Partition,
    a_stat,
    ah_leq,
    as_bipartition,
    as_partition,
    dominance_leq,
    enumerate_bipartitions,
    enumerate_partitions,
    hasse_relations,
    irr_dim,
    m_stat,
    n_stat,
    orbit_dim,
    partition_sum,
    syt_count,
)
from .gfmat import (  # noqa: F401
    BudgetExceededError,
    PrimeField,
    Subspace,
    induced_maps,
    jordan_matrix,
    jordan_type,
    random_invertible,
    rref_rank_kernel,
)
from .pairs import (  # noqa: F401
    EnhancedPair,
    MixedInvariant,
    NonSplitError,
    census,
    classify,
    commutant,
    mixed_invariant,
    orbit_representative,
    orbit_size,
    same_orbit,
    stab_dim,
)
from .counting import (  # noqa: F401
    CountPolynomial,
    CountSeries,
    InterpolationError,
    gaussian_factorial,
    interpolate,
    slope_dim,
)
from .flags import (  # noqa: F401
    FlagCondition,
    count_fiber,
    galois_degree_check,
    slice_count,
    springer_report,
)
from .symplectic import (  # noqa: F401
    SignedPermutation,
    SymplecticSpace,
    exotic_fiber_count,
    exotic_slice_count,
    h_orbit,
    iotheta_set,
    isotropic_flags,
    root_identity_check,
    signed_permutations,
)
