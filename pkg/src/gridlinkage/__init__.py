"""Exact tooling for disjoint paths on grids with border arcs.

The package builds the hard grid instances, solves them exactly with a
budgeted backtracking search, checks uniqueness, spanning, crossing
profiles and vital linkages, measures treewidth and pathwidth, and
serializes or draws everything reproducibly.
"""

from .construction import (
    CALIBRATED_ARC_RULE_ID,
    CALIBRATED_S0_PLACEMENT,
    S0_BOTTOM_LEFT,
    S0_BOTTOM_RIGHT,
    S0_PLACEMENTS,
    S0_TOP_RIGHT,
    ArcRule,
    CalibrationError,
    CalibrationResult,
    CandidateReport,
    build_instance,
    calibrate_arc_rule,
    calibrated_rule,
    candidate_arc_rules,
    expected_crossing_profile,
    rule_by_identifier,
)
from .graphs import (
    ROLE_BORDER,
    ROLE_EXTERIOR,
    ROLE_INNER,
    ROLE_SUBDIVISION,
    CrossingReport,
    Graph,
    GridLayout,
    crossing_count,
    crossing_report,
    grid_vertex_id,
    inner_vertices,
    is_planar_certificate,
    make_grid,
    normalize_edge,
    subdivide_edges,
    validate_path,
)
from .io import (
    FORMAT_VERSION,
    check_solution_matches,
    instance_digest,
    parse_instance,
    parse_solution,
    read_edge_list,
    serialize_instance,
    serialize_solution,
    solution_paths,
    write_edge_list,
)
from .render import render_dot, render_svg
from .sampling import random_batch, random_instance
from .solver import (
    ORDER_ASCENDING,
    ORDER_MIN_DEGREE,
    PAIR_ORDER_AUTO,
    PAIR_ORDER_INPUT,
    PATTERN_ENDPOINT_SET,
    PATTERN_PAIRING,
    STATUS_ABORTED,
    STATUS_SOLVABLE,
    STATUS_UNSOLVABLE,
    Instance,
    IrrelevantReport,
    Linkage,
    SearchAborted,
    SolveOutcome,
    brute_force_oracle,
    check_linkage,
    irrelevant_vertices,
    is_unique_solution,
    is_vital_linkage,
    pairing_of,
    pattern_of,
    solve,
    spans_all_vertices,
)
from .width import (
    KIND_PATHWIDTH,
    KIND_TREEWIDTH,
    WidthBoundReport,
    WidthResult,
    pathwidth_exact,
    treewidth_exact,
    verify_width_lower_bound,
    width_of_elimination_order,
    width_of_layout,
)

__version__ = "0.1.0"

__all__ = [
    "ArcRule",
    "CALIBRATED_ARC_RULE_ID",
    "CALIBRATED_S0_PLACEMENT",
    "CalibrationError",
    "CalibrationResult",
    "CandidateReport",
    "CrossingReport",
    "FORMAT_VERSION",
    "Graph",
    "GridLayout",
    "Instance",
    "IrrelevantReport",
    "KIND_PATHWIDTH",
    "KIND_TREEWIDTH",
    "Linkage",
    "ORDER_ASCENDING",
    "ORDER_MIN_DEGREE",
    "PAIR_ORDER_AUTO",
    "PAIR_ORDER_INPUT",
    "PATTERN_ENDPOINT_SET",
    "PATTERN_PAIRING",
    "ROLE_BORDER",
    "ROLE_EXTERIOR",
    "ROLE_INNER",
    "ROLE_SUBDIVISION",
    "S0_BOTTOM_LEFT",
    "S0_BOTTOM_RIGHT",
    "S0_PLACEMENTS",
    "S0_TOP_RIGHT",
    "STATUS_ABORTED",
    "STATUS_SOLVABLE",
    "STATUS_UNSOLVABLE",
    "SearchAborted",
    "SolveOutcome",
    "WidthBoundReport",
    "WidthResult",
    "brute_force_oracle",
    "build_instance",
    "calibrate_arc_rule",
    "calibrated_rule",
    "candidate_arc_rules",
    "check_linkage",
    "check_solution_matches",
    "crossing_count",
    "crossing_report",
    "expected_crossing_profile",
    "grid_vertex_id",
    "inner_vertices",
    "instance_digest",
    "irrelevant_vertices",
    "is_planar_certificate",
    "is_unique_solution",
    "is_vital_linkage",
    "make_grid",
    "normalize_edge",
    "pairing_of",
    "parse_instance",
    "parse_solution",
    "pathwidth_exact",
    "pattern_of",
    "random_batch",
    "random_instance",
    "read_edge_list",
    "render_dot",
    "render_svg",
    "rule_by_identifier",
    "serialize_instance",
    "serialize_solution",
    "solution_paths",
    "solve",
    "spans_all_vertices",
    "subdivide_edges",
    "treewidth_exact",
    "validate_path",
    "verify_width_lower_bound",
    "width_of_elimination_order",
    "width_of_layout",
    "write_edge_list",
]
