"""Strict-majority influence dynamics and perfect target set selection."""

from .convergence import (
    ConvergenceEstimate,
    estimate_avg_convergence,
    guaranteed_epsilon,
    hoeffding_sample_size,
)
from .dynamics import (
    NONPROGRESSIVE,
    PROGRESSIVE,
    Trajectory,
    default_cap,
    disagreement_potential,
    is_perfect_target_set,
    sequential_round,
    simulate,
    simulate_batch,
    step,
    strict_majority_thresholds,
)
from .estimators import ExactTargetSelector, GreedyTargetSelector, MajorityDynamics, PrefixTargetSelector
from .exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphFormatError,
    NoPerfectTargetSetError,
    SizeLimitError,
)
from .graph import (
    Graph,
    VertexMapping,
    double_cover,
    format_edge_list,
    giant_component,
    load_edge_list,
    read_edge_list,
    tight_family,
    tight_family_layers,
)
from .hardness import HardnessInstance, build_hardness_instance
from .powerlaw import (
    PowerLawBounds,
    PowerLawSpec,
    generate,
    hurwitz_zeta,
    lower_bound_fraction,
    powerlaw_weights,
    upper_bound_fraction,
)
from .selection import (
    TargetSetReport,
    approximation_ratio,
    brute_force_min_dominating_set,
    brute_force_min_pts,
    general_bounds,
    greedy_npts,
    prefix_pts,
    rank_centrality,
    rank_high_degree,
    rank_random,
)

__version__ = "0.1.0"
