"""Fiedler eigenpairs on trees: spectra, random-walk games, hitting times."""

from .admissibility import (
    AdmissibilityReport,
    CaterpillarSpec,
    ExtremaVerdict,
    check_admissibility,
    check_caterpillar_rule,
    distance_between_extrema,
    extrema_verdict,
)
from .game import (
    EncounterProfile,
    GameSpec,
    PayoffEstimate,
    exact_payoff,
    expected_encounters,
    simulate_payoff,
)
from .graph import (
    AttachedComponent,
    DisconnectedGraphError,
    EdgeListParseError,
    Graph,
    GraphError,
    NotATreeError,
    PathDecomposition,
    bfs_distances,
    decompose_along_path,
    diameter_and_diametral_pairs,
    is_connected,
    is_tree,
    longest_path,
    max_degree,
    parse_edge_list,
)
from .hitting import (
    HittingProfile,
    attachment_hit,
    hitting_times,
    max_degree_hitting_bound,
)
from .spectral import (
    BoundsReport,
    EigenPair,
    LaplacianOperator,
    SolverError,
    bounds_report,
    eigenpair_k,
    fiedler_pair,
    verify_fiedler_connectivity,
    verify_monotonicity,
)

__all__ = [
    "AdmissibilityReport",
    "AttachedComponent",
    "BoundsReport",
    "CaterpillarSpec",
    "DisconnectedGraphError",
    "EdgeListParseError",
    "EigenPair",
    "EncounterProfile",
    "ExtremaVerdict",
    "GameSpec",
    "Graph",
    "GraphError",
    "HittingProfile",
    "LaplacianOperator",
    "NotATreeError",
    "PathDecomposition",
    "PayoffEstimate",
    "SolverError",
    "attachment_hit",
    "bfs_distances",
    "bounds_report",
    "check_admissibility",
    "check_caterpillar_rule",
    "decompose_along_path",
    "diameter_and_diametral_pairs",
    "distance_between_extrema",
    "eigenpair_k",
    "exact_payoff",
    "expected_encounters",
    "extrema_verdict",
    "fiedler_pair",
    "hitting_times",
    "is_connected",
    "is_tree",
    "longest_path",
    "max_degree",
    "max_degree_hitting_bound",
    "parse_edge_list",
    "simulate_payoff",
    "verify_fiedler_connectivity",
    "verify_monotonicity",
]
