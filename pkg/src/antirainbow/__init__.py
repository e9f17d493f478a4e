"""Degenerate forest decompositions and anti-rainbow edge colourings.

The pipeline: compute the exact maximal density m(G), orient the graph
along its degeneracy ordering, peel bounded-degree forests off the top
out-degree layers via bipartite matchings, colour each forest with its
own minimal palette and every residual edge with a fresh colour.  The
audit tools re-verify each guarantee from scratch.
"""

from .graphs import (
    Graph,
    GraphInputError,
    Orientation,
    complete_graph,
    connected_components,
    cycle_graph,
    degeneracy_ordering,
    exact_degeneracy,
    is_forest,
    orient_by_ordering,
    parse_graph,
    path_graph,
    star_graph,
)
from .density import (
    DensityWitness,
    ceil_fraction,
    format_fraction,
    is_strictly_two_balanced,
    max_density,
    max_density_bruteforce,
    max_two_density,
    parse_fraction,
    strictly_two_balanced_core,
    subgraph_density,
    two_density,
)
from .decompose import (
    CheckResult,
    Decomposition,
    DensityViolationError,
    PeelResult,
    SaturationResult,
    degenerate_decomposition,
    peel_layer,
    saturating_matching,
    verify_decomposition,
)
from .coloring import (
    EdgeColoring,
    anti_rainbow_coloring,
    color_forest,
    coloring_from_decomposition,
    is_proper_coloring,
    r_value,
)
from .audit import (
    AuditBudgetError,
    Embedding,
    RainbowViolation,
    certificate_check,
    degeneracy_gap_bound,
    max_degenerate_subgraph_edges,
    rainbow_copy_search,
    rainbow_subgraph_audit,
)
from .experiments import (
    SweepPoint,
    TrialConfig,
    TrialRecord,
    coloring_sweep,
    derive_seed,
    sample_gnp,
    splitmix64,
    triangle_anti_ramsey_trial,
    triangle_threshold_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AuditBudgetError",
    "CheckResult",
    "Decomposition",
    "DensityViolationError",
    "DensityWitness",
    "EdgeColoring",
    "Embedding",
    "Graph",
    "GraphInputError",
    "Orientation",
    "PeelResult",
    "RainbowViolation",
    "SaturationResult",
    "SweepPoint",
    "TrialConfig",
    "TrialRecord",
    "anti_rainbow_coloring",
    "ceil_fraction",
    "certificate_check",
    "color_forest",
    "coloring_from_decomposition",
    "coloring_sweep",
    "complete_graph",
    "connected_components",
    "cycle_graph",
    "degeneracy_gap_bound",
    "degeneracy_ordering",
    "degenerate_decomposition",
    "derive_seed",
    "exact_degeneracy",
    "format_fraction",
    "is_forest",
    "is_proper_coloring",
    "is_strictly_two_balanced",
    "max_degenerate_subgraph_edges",
    "max_density",
    "max_density_bruteforce",
    "max_two_density",
    "orient_by_ordering",
    "parse_fraction",
    "parse_graph",
    "path_graph",
    "peel_layer",
    "r_value",
    "rainbow_copy_search",
    "rainbow_subgraph_audit",
    "sample_gnp",
    "saturating_matching",
    "splitmix64",
    "star_graph",
    "strictly_two_balanced_core",
    "subgraph_density",
    "triangle_anti_ramsey_trial",
    "triangle_threshold_sweep",
    "two_density",
    "verify_decomposition",
]
