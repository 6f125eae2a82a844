"""Chain-recurrence structure and special alpha-limit sets of S-unimodal maps.

The package computes, for one-parameter families such as the logistic
family, the tower of chain-recurrence classes (repelling cycles, Cantor
repellers, and the attractor), the nested trapping regions that separate
them, the induced interval partition, and the special alpha-limit set of
any point. Symbolic dynamics on Cantor nodes, grid- and sampling-based
oracles, and a small CLI round it out.
"""

from .config import Settings, TOL_GEOM, TOL_ROOT, TOL_STAB
from .errors import (
    AnalysisError,
    DomainError,
    EscapeError,
    InadmissibleWordError,
    LimitError,
    NoDenseOrbitError,
    SalimitsError,
)
from .intervals import IntervalSet, Piece, union_all
from .maps import (
    FAMILIES,
    CriticalOrbit,
    SUnimodalReport,
    UnimodalMap,
    check_sunimodal,
    make_map,
    register_family,
)
from .orbits import (
    Cycle,
    cycle_from_point,
    find_cycles,
    find_fixed_points,
    one_sided_attraction,
    periodic_points,
)
from .oracle import (
    BackwardSample,
    GridSystem,
    alpha_limit_estimate,
    exhaustive_backward,
    sample_backward,
)
from .partition import (
    Partition,
    compute_partition,
    compute_V,
    level,
    omega_candidates,
    salpha,
)
from .symbolic import (
    BiSequence,
    ItineraryPartition,
    SftDescriptor,
    backward_dense_bitrajectory,
    backward_dense_tail,
    cantor_cover,
    invert_itinerary,
    itinerary,
    itinerary_partition,
    sft_from_node,
    sft_from_partition,
)
from .tower import (
    AttractorInfo,
    Node,
    Tower,
    TrappingRegion,
    band_intervals,
    build_tower,
    cyclic_region,
    find_attractor,
    locate_crisis,
    locate_window,
)
from ._kernels import backend as kernel_backend

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "AttractorInfo",
    "BackwardSample",
    "BiSequence",
    "CriticalOrbit",
    "Cycle",
    "DomainError",
    "EscapeError",
    "FAMILIES",
    "GridSystem",
    "InadmissibleWordError",
    "IntervalSet",
    "ItineraryPartition",
    "LimitError",
    "NoDenseOrbitError",
    "Node",
    "Partition",
    "Piece",
    "SUnimodalReport",
    "SalimitsError",
    "Settings",
    "SftDescriptor",
    "TOL_GEOM",
    "TOL_ROOT",
    "TOL_STAB",
    "Tower",
    "TrappingRegion",
    "UnimodalMap",
    "alpha_limit_estimate",
    "backward_dense_bitrajectory",
    "backward_dense_tail",
    "band_intervals",
    "build_tower",
    "cantor_cover",
    "check_sunimodal",
    "compute_V",
    "compute_partition",
    "cycle_from_point",
    "cyclic_region",
    "exhaustive_backward",
    "find_attractor",
    "find_cycles",
    "find_fixed_points",
    "invert_itinerary",
    "itinerary",
    "itinerary_partition",
    "kernel_backend",
    "level",
    "locate_crisis",
    "locate_window",
    "make_map",
    "omega_candidates",
    "one_sided_attraction",
    "periodic_points",
    "register_family",
    "salpha",
    "sample_backward",
    "sft_from_node",
    "sft_from_partition",
    "union_all",
]
