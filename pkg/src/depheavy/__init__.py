"""Dependency-heaviness analytics for package ecosystems."""

from .adjusted import (
    StabilityCurve,
    adjusted_mhp,
    adjusted_penalized,
    select_penalty,
    stability_curve,
)
from .analytics import (
    CoreGraph,
    DiGraphLite,
    KeyPaths,
    PairRelation,
    SourceScore,
    classify_parent_pair,
    components,
    core_graph,
    edge_betweenness,
    key_paths,
    source_score,
    transmission_length,
)
from .errors import (
    DepFieldError,
    DepheavyError,
    DomainError,
    EdgeListFormatError,
    EdgeNotFound,
    PackageNotFound,
)
from .fitting import FitResult, fit_power_law, fit_stretched_exponential
from .graph import (
    DepGraph,
    build_graph,
    dependency_query,
    depth,
    distance,
    reach_without,
    strong_dep_count,
)
from .heaviness import (
    CoHeaviness,
    DownstreamHeaviness,
    EdgeHeaviness,
    co_heaviness,
    edge_heaviness,
    gini,
    heaviness_from_upstream,
    heaviness_on_children,
    heaviness_on_downstream,
    max_co_heaviness,
    max_heaviness_from_parents,
    total_downstream_heaviness,
    weak_parent_heaviness,
    whatif_demote,
)
from .ingest import (
    DEFAULT_EXCLUSIONS,
    DepDeclaration,
    PackageDatabase,
    RawPackageRecord,
    build_database,
    load_database,
    load_edge_list,
    parse_dcf,
    parse_dep_field,
    save_database,
    write_edge_list,
)
from .report import (
    DEFAULT_TOP_THRESHOLDS,
    EcosystemSummary,
    PackageStatsRow,
    StatsConfig,
    compute_all_stats,
    ecosystem_summary,
    top_lists,
)

__version__ = "0.1.0"
