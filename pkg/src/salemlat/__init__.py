"""Exact arithmetic for Salem degrees and entropy on even hyperbolic lattices."""

from .dynamics import (
    GeneratorSet,
    SearchReport,
    TransferResult,
    build_generators,
    eichler_transvection,
    find_positive_vector,
    search_max_salem,
    transfer_fibrations,
)
from .fibrations import (
    FibrationAtlas,
    FibrationClass,
    even_picard_report,
    exceptional_sublattice,
    fibration_analysis,
    is_primitive_isotropic,
    perp_two_sublattice,
    scan_isotropic,
)
from .isometry import (
    Isometry,
    SubspaceSpan,
    Verdict,
    char_poly,
    compose,
    in_so_plus,
    inverse,
    preserves_positive_cone,
    stable_subspace_dichotomy,
    validate_isometry,
)
from .lattice import (
    DiscriminantGroup,
    Lattice,
    Sublattice,
    build_lattice,
    discriminant_group,
    embedding_index,
    inner,
    make_sublattice,
    norm,
    orthogonal_complement,
    p_elementary_analysis,
    primitive_closure,
    signature,
)
from .roots import (
    RootSet,
    WalkResult,
    enumerate_norm_vectors,
    reflect,
    root_sublattice,
    weyl_walk,
)
from .salem import (
    SalemDecomposition,
    cyclotomic,
    entropy_interval,
    is_salem,
    salem_decomposition,
    strip_cyclotomic,
    sturm_count,
)

__version__ = "0.1.0"
