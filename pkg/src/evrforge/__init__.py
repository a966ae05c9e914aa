"""evrforge: tooling for ethical value registers.

Parses the register text format, validates structural invariants, runs the
conformance rule catalog, builds the traceability graph and renders audit
reports from the command line.
"""

from .analytics import (
    LensCoverage,
    RankingExplanation,
    RigorViolation,
    TallyEntry,
    ValueTally,
    check_control_rigor,
    classify_risk_path,
    lens_coverage,
    propose_core_values,
    rank_values,
    tally_totals,
    tally_values,
)
from .dsl import (
    ParseDiagnostic,
    ParseResult,
    SourceSpan,
    export_interchange,
    parse_register,
    serialize_canonical,
)
from .model import (
    GateReport,
    InvalidTransitionError,
    Phase,
    RegisterDocument,
    RegisterError,
    UnknownEntityError,
    Violation,
    advance_phase,
    new_empty_register,
    resolve_alias,
    validate_register,
)
from .rules import Diagnostic, Rule, check_rule, rule_catalog, run_rules
from .trace import (
    ChangeSet,
    CoverageRow,
    MaturityScore,
    TraceGraph,
    build_graph,
    coverage_csv,
    coverage_report,
    diff_registers,
    export_dot,
    maturity_score,
    trace_chain,
)

__version__ = "0.1.0"

__all__ = [
    "ChangeSet",
    "CoverageRow",
    "Diagnostic",
    "GateReport",
    "InvalidTransitionError",
    "LensCoverage",
    "MaturityScore",
    "ParseDiagnostic",
    "ParseResult",
    "Phase",
    "RankingExplanation",
    "RegisterDocument",
    "RegisterError",
    "RigorViolation",
    "Rule",
    "SourceSpan",
    "TallyEntry",
    "TraceGraph",
    "UnknownEntityError",
    "ValueTally",
    "Violation",
    "advance_phase",
    "build_graph",
    "check_control_rigor",
    "check_rule",
    "classify_risk_path",
    "coverage_csv",
    "coverage_report",
    "diff_registers",
    "export_dot",
    "export_interchange",
    "lens_coverage",
    "maturity_score",
    "new_empty_register",
    "parse_register",
    "propose_core_values",
    "rank_values",
    "resolve_alias",
    "rule_catalog",
    "run_rules",
    "serialize_canonical",
    "tally_totals",
    "tally_values",
    "trace_chain",
    "validate_register",
]
