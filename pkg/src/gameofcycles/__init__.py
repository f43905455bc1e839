"""Game of Cycles: boards, rules, solver, strategies, and search tools."""

from .graph import EmbeddedGraph, GraphError, build_graph, from_json, trim
from .rules import (
    IllegalMoveError,
    InvalidPositionError,
    Move,
    Position,
    apply_move,
    is_death_move,
    is_sink_source_violation,
    is_terminal,
    legal_moves,
    move_reason,
    position_from_json,
    validate_position,
)
from .solver import (
    AnalysisReport,
    BudgetExceededError,
    SolveBudget,
    Solver,
    analyze,
    decompose,
    grundy,
    grundy_sum,
    grundy_with_pass,
    winner,
)
from .strategies import (
    CertificateViolationError,
    CopycatCertificate,
    Involution,
    branching_tree_predict,
    copycat_applicable,
    copycat_move,
    find_involutions,
    is_branching_tree,
    mirror_move,
    ngon_special_predict,
    odd_parent_count,
    verify_copycat,
)
from .families import FAMILIES, FamilyError, FamilySpec, generate
from .search import ScanReport, ScanRecord, scan_corpus

__all__ = [
    "EmbeddedGraph",
    "GraphError",
    "build_graph",
    "from_json",
    "trim",
    "IllegalMoveError",
    "InvalidPositionError",
    "Move",
    "Position",
    "apply_move",
    "is_death_move",
    "is_sink_source_violation",
    "is_terminal",
    "legal_moves",
    "move_reason",
    "position_from_json",
    "validate_position",
    "AnalysisReport",
    "BudgetExceededError",
    "SolveBudget",
    "Solver",
    "analyze",
    "decompose",
    "grundy",
    "grundy_sum",
    "grundy_with_pass",
    "winner",
    "CertificateViolationError",
    "CopycatCertificate",
    "Involution",
    "branching_tree_predict",
    "copycat_applicable",
    "copycat_move",
    "find_involutions",
    "is_branching_tree",
    "mirror_move",
    "ngon_special_predict",
    "odd_parent_count",
    "verify_copycat",
    "FAMILIES",
    "FamilyError",
    "FamilySpec",
    "generate",
    "ScanReport",
    "ScanRecord",
    "scan_corpus",
]
