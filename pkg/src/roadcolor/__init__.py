"""Road colorings of finite directed graphs and the random walks they drive."""

__version__ = "0.1.0"

from .errors import (
    InputError,
    InsufficientDataError,
    PreconditionError,
    RoadColorError,
    StructureError,
    UnsupportedError,
)
from .graph import DirectedGraph, GraphProperties, check_assumption_A, period, positivity_exponent
from .laws import (
    ColoredLaw,
    ProbabilityLawSigma,
    ProbabilityLawV,
    check_uniformity,
    cyclic_parts,
    periodic_strongness,
    stationary_law,
    transition_matrix,
)
from .mapping import Mapping, RoadColoring, Word, compose, decompose_colorings, induced_graph
from .sync import (
    analyze_sync,
    classify_subset,
    f_cliques,
    find_synchronizing_coloring,
    min_image_rank,
    pad_word,
    partition_from_word,
    shortest_synchronizing_word,
)
from .walk import (
    estimate_mu_hat,
    induced_process,
    mu_hat_convergence,
    nonstrong_evidence,
    pattern_occurrences,
    reconstruct_strong,
    simulate_walk,
)

__all__ = [
    "__version__",
    "InputError",
    "InsufficientDataError",
    "PreconditionError",
    "RoadColorError",
    "StructureError",
    "UnsupportedError",
    "ColoredLaw",
    "ProbabilityLawSigma",
    "ProbabilityLawV",
    "check_uniformity",
    "cyclic_parts",
    "periodic_strongness",
    "stationary_law",
    "transition_matrix",
    "analyze_sync",
    "classify_subset",
    "f_cliques",
    "find_synchronizing_coloring",
    "min_image_rank",
    "pad_word",
    "partition_from_word",
    "shortest_synchronizing_word",
    "estimate_mu_hat",
    "induced_process",
    "mu_hat_convergence",
    "nonstrong_evidence",
    "pattern_occurrences",
    "reconstruct_strong",
    "simulate_walk",
    "DirectedGraph",
    "GraphProperties",
    "check_assumption_A",
    "period",
    "positivity_exponent",
    "Mapping",
    "RoadColoring",
    "Word",
    "compose",
    "decompose_colorings",
    "induced_graph",
]
