"""Exact localization of personalized PageRank, plus the competition and
leadership structure it induces on a directed graph.

The analysis pipeline: parse a graph, build its patched row-stochastic
matrix, form X = (1 - alpha) * (I - alpha P_u)^{-1}, and read every
question off X: per-node attainable rank intervals, effective-competitor
pairs, and the leadership group, each with constructive personalization
witnesses and a seeded Monte-Carlo verification layer.
"""

from .competition import (
    STRICT_MARGIN,
    CompetitionVerdict,
    CompetitivityInterval,
    LeadershipGroup,
    WitnessCertificate,
    competitivity_graph,
    competitivity_interval,
    effective_competitors,
    leadership_certificate,
    leadership_group,
    witness_epsilon,
)
from .errors import (
    ConvergenceError,
    DegenerateIntervalError,
    DomainError,
    NumericalError,
    OracleMismatchError,
    ParseError,
    RankReachError,
    StructureError,
)
from .graph import (
    AdjacencyView,
    DanglingIndicator,
    DirectedGraph,
    adjacency,
    dangling_indicator,
    parse_edge_list,
    parse_graph_json,
)
from .localization import (
    AchieveResult,
    BasisFamilyVector,
    FundamentalMatrix,
    PRInterval,
    RankContext,
    StructureReport,
    achieve_value,
    basis_family,
    basis_family_matrix,
    fundamental_matrix,
    pr_interval,
    verify_structure,
)
from .oracle import (
    SampleReport,
    explicit_inverse_check,
    monte_carlo_interval,
    observe_rank_swaps,
    sample_personalization,
    sample_personalization_batch,
)
from .stochastic import (
    DEFAULT_ALPHA,
    DanglingDistribution,
    GoogleMatrix,
    PageRankVector,
    PersonalizationVector,
    RowStochasticMatrix,
    StochasticConfig,
    google_matrix,
    load_config,
    pagerank_power,
    pagerank_solve,
    patch_dangling,
    row_stochastic,
    solve_rank_system,
)

__all__ = [
    "AchieveResult",
    "AdjacencyView",
    "BasisFamilyVector",
    "CompetitionVerdict",
    "CompetitivityInterval",
    "ConvergenceError",
    "DEFAULT_ALPHA",
    "DanglingDistribution",
    "DanglingIndicator",
    "DegenerateIntervalError",
    "DirectedGraph",
    "DomainError",
    "FundamentalMatrix",
    "GoogleMatrix",
    "LeadershipGroup",
    "NumericalError",
    "OracleMismatchError",
    "PRInterval",
    "PageRankVector",
    "ParseError",
    "PersonalizationVector",
    "RankContext",
    "RankReachError",
    "RowStochasticMatrix",
    "STRICT_MARGIN",
    "SampleReport",
    "StochasticConfig",
    "StructureError",
    "StructureReport",
    "WitnessCertificate",
    "achieve_value",
    "adjacency",
    "basis_family",
    "basis_family_matrix",
    "competitivity_graph",
    "competitivity_interval",
    "dangling_indicator",
    "effective_competitors",
    "explicit_inverse_check",
    "fundamental_matrix",
    "google_matrix",
    "leadership_certificate",
    "leadership_group",
    "load_config",
    "monte_carlo_interval",
    "observe_rank_swaps",
    "pagerank_power",
    "pagerank_solve",
    "parse_edge_list",
    "parse_graph_json",
    "patch_dangling",
    "pr_interval",
    "row_stochastic",
    "sample_personalization",
    "sample_personalization_batch",
    "solve_rank_system",
    "verify_structure",
    "witness_epsilon",
]
