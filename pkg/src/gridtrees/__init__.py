"""Exact spanning-tree counts, multipliers and bounds for grid graphs."""

from .bounds import BoundsReport, bulk_limit_trend, evaluate_bounds
from .districting import (
    DistrictPartition,
    PartitionScore,
    run_ensemble,
    scatter_export,
    score_partition,
    verify_boundss,
    verify_redistrict_identity,
)
from .lattice import (
    Cell,
    GridGraph,
    SimplicityReport,
    Vertex,
    area,
    diamond,
    boundary_identity_check,
    check_simple,
    faces,
    induced_grid_graph,
    rectangle,
    top_left_boundary,
)
from .randwalk import (
    F,
    absorption_probability,
    build_truncated_u,
    depth,
    escape_probability,
    escape_triple,
    estimate_P,
    sample_uniform_spanning_tree,
)
from .treecount import MultiplierProfile, TreeCount, heatmap_export, multiplier, multiplier_profile, prefix_graphs, tau

__version__ = "0.1.0"
