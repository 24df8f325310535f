"""Exact counting, enumeration and verification of graph assembly trees."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    caterpillar,
    complete,
    cycle,
    graph_from_json,
    graph_to_json,
    has_crossing_edge,
    is_connected_induced,
    path,
    star,
)
from .assembly import (
    AssemblyTree,
    GluingRule,
    TimedAssemblyTree,
    branch,
    count_level_assignments,
    count_timed_trees,
    count_trees,
    enumerate_timed_trees,
    enumerate_trees,
    frontier_partition,
    leaf,
    parse_tree,
    serialize_tree,
    timed_branch,
    timed_leaf,
    validate,
    validation_errors,
)
from .series import (
    PowerSeries,
    check_td_path_functional_eq,
    dump_coefficients,
    egf_fubini,
    egf_td_cycle,
    ogf_connected_cycle,
    ogf_super_catalan,
)
from . import combinat, formulas

__all__ = [
    "AssemblyTree",
    "GluingRule",
    "Graph",
    "PowerSeries",
    "TimedAssemblyTree",
    "branch",
    "caterpillar",
    "check_td_path_functional_eq",
    "combinat",
    "complete",
    "count_level_assignments",
    "count_timed_trees",
    "count_trees",
    "cycle",
    "dump_coefficients",
    "egf_fubini",
    "egf_td_cycle",
    "enumerate_timed_trees",
    "enumerate_trees",
    "formulas",
    "frontier_partition",
    "graph_from_json",
    "graph_to_json",
    "has_crossing_edge",
    "is_connected_induced",
    "leaf",
    "ogf_connected_cycle",
    "ogf_super_catalan",
    "parse_tree",
    "path",
    "serialize_tree",
    "star",
    "timed_branch",
    "timed_leaf",
    "validate",
    "validation_errors",
]
