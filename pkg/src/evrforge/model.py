"""Domain model for ethical value registers.

A :class:`RegisterDocument` holds one project's full register: the system of
interest and its partner systems, stakeholders, contexts of use, elicitation
material, the core-value / value-quality / EVR chain with threats, controls
and dispositions hanging off it, plus attestations and lifecycle decisions.

Documents are immutable after construction.  Every operation in this package
returns a new value or a report; nothing mutates a document in place.
Structural checking lives in :func:`validate_register`, which returns the
complete list of violations instead of raising on the first one, so that the
text front end can report many problems per run.
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass, field, replace
from enum import Enum


class Phase(str, Enum):
    CONCEPT = "concept"
    EXPLORATION = "exploration"
    DESIGN = "design"
    DEPLOYMENT = "deployment"


PHASE_ORDER = {
    Phase.CONCEPT: 0,
    Phase.EXPLORATION: 1,
    Phase.DESIGN: 2,
    Phase.DEPLOYMENT: 3,
}


def phase_at_least(phase: Phase, floor: Phase) -> bool:
    return PHASE_ORDER[phase] >= PHASE_ORDER[floor]


class CooperationType(str, Enum):
    VIRTUAL = "virtual"
    COLLABORATIVE = "collaborative"
    ACKNOWLEDGED = "acknowledged"
    DIRECTED = "directed"


class StakeholderKind(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"


class CaptureStage(str, Enum):
    PRE_DESIGN = "pre_design"
    POST_DEPLOYMENT = "post_deployment"


class LensKind(str, Enum):
    UTILITARIAN = "utilitarian"
    VIRTUE = "virtue"
    DUTY = "duty"
    CULTURAL = "cultural"


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class QualityDirection(str, Enum):
    SUPPORTS = "supports"
    UNDERMINES = "undermines"


class QualitySource(str, Enum):
    STAKEHOLDER = "stakeholder"
    CONCEPTUAL_INVESTIGATION = "conceptual_investigation"
    POST_DEPLOYMENT = "post_deployment"


class EvrKind(str, Enum):
    ORGANIZATIONAL = "organizational"
    TECHNICAL = "technical"


class RiskPath(str, Enum):
    UNCLASSIFIED = "unclassified"
    LOW = "low"
    HIGH = "high"


class HarmLikelihood(str, Enum):
    UNLIKELY = "unlikely"
    REASONABLY_LIKELY = "reasonably_likely"


class ControlForm(str, Enum):
    FUNCTIONAL = "functional"
    NON_FUNCTIONAL = "non_functional"
    OPERATIONAL = "operational"
    PROCEDURAL = "procedural"
    ORGANIZATIONAL = "organizational"
    STRUCTURAL = "structural"


class ControlStatus(str, Enum):
    PROPOSED = "proposed"
    ACCEPTED = "accepted"
    IMPLEMENTED = "implemented"


class SignatoryRole(str, Enum):
    EXECUTIVE = "executive"
    ENGINEER = "engineer"
    STAKEHOLDER_REP = "stakeholder_rep"
    VALUE_EXPERT = "value_expert"


class SubjectKind(str, Enum):
    PRIORITY_DECISION = "priority_decision"
    RISK_ACCEPTANCE = "risk_acceptance"
    MISSION = "mission"
    INVESTMENT_DECISION = "investment_decision"
    RULE = "rule"


class Verdict(str, Enum):
    GO = "go"
    NO_GO = "no_go"


THRESHOLD_COMPARATORS = ("<", "<=", "=", ">=", ">")

IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
QUALITY_ID_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)$")
EVR_ID_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)\.([1-9][0-9]*)$")
THREAT_ID_RE = re.compile(r"^([1-9][0-9]*\.[1-9][0-9]*\.[1-9][0-9]*)-T([1-9][0-9]*)$")
CONTROL_ID_RE = re.compile(r"^([1-9][0-9]*\.[1-9][0-9]*\.[1-9][0-9]*)-C([1-9][0-9]*)$")


def quality_parent(quality_id: str) -> int | None:
    """Core value number encoded in a quality id, or None if malformed."""
    m = QUALITY_ID_RE.match(quality_id)
    return int(m.group(1)) if m else None


def evr_parent(evr_id: str) -> str | None:
    """Quality id encoded in an EVR id, or None if malformed."""
    m = EVR_ID_RE.match(evr_id)
    return f"{m.group(1)}.{m.group(2)}" if m else None


def threat_parent(threat_id: str) -> str | None:
    m = THREAT_ID_RE.match(threat_id)
    return m.group(1) if m else None


def control_parent(control_id: str) -> str | None:
    m = CONTROL_ID_RE.match(control_id)
    return m.group(1) if m else None


@dataclass(frozen=True)
class ProjectMeta:
    name: str
    version: str = ""


@dataclass(frozen=True)
class Soi:
    """System of interest: the socio-technical system under design."""

    name: str
    concept_of_operation: str = ""
    deployment_regions: tuple[str, ...] = ()


@dataclass(frozen=True)
class SosElement:
    """A partner system in the surrounding system-of-systems."""

    id: str
    name: str
    cooperation_type: CooperationType
    tier: int = 1
    processes_personal_data: bool = False
    in_ethical_scope: bool = False
    access_to_enabling_elements: bool = False


@dataclass(frozen=True)
class SelectionProfile:
    motivation: str = ""
    power: str = ""
    knowledge: str = ""
    legitimization: str = ""


@dataclass(frozen=True)
class Stakeholder:
    id: str
    name: str
    kind: StakeholderKind
    description: str = ""
    region: str = ""
    selection_profile: SelectionProfile | None = None


@dataclass(frozen=True)
class DataFlow:
    source: str
    sink: str
    data_type: str


@dataclass(frozen=True)
class ContextOfUse:
    id: str
    name: str
    captured: CaptureStage = CaptureStage.PRE_DESIGN
    data_elements: tuple[str, ...] = ()
    data_flows: tuple[DataFlow, ...] = ()
    data_subjects: tuple[str, ...] = ()
    data_types: tuple[str, ...] = ()
    integrity_expectations: tuple[str, ...] = ()


@dataclass(frozen=True)
class Lens:
    """An elicitation lens: one of the three standing ethical lenses, or a
    named culture-specific framework."""

    kind: LensKind
    framework: str = ""


@dataclass(frozen=True)
class ElicitationSession:
    id: str
    date: str = ""
    participants: tuple[str, ...] = ()
    lenses_used: tuple[Lens, ...] = ()


@dataclass(frozen=True)
class ValueStatement:
    id: str
    session: str
    stakeholder: str
    lens: Lens
    text: str = ""
    polarity: Polarity = Polarity.POSITIVE
    named_values: tuple[str, ...] = ()
    extracted_values: tuple[str, ...] = ()


@dataclass(frozen=True)
class HierarchyScores:
    """Superiority criteria scored 1..5 each."""

    endurance: int
    depth: int
    indivisibility: int
    bearer_independence: int
    intrinsic_worth: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (
            self.endurance,
            self.depth,
            self.indivisibility,
            self.bearer_independence,
            self.intrinsic_worth,
        )


@dataclass(frozen=True)
class CoreValue:
    id: int
    name: str
    priority_rank: int
    aliases: tuple[str, ...] = ()
    intrinsic: bool = True
    hierarchy_scores: HierarchyScores | None = None
    supporting_statements: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValueQuality:
    id: str
    core_value: int
    name: str
    direction: QualityDirection = QualityDirection.SUPPORTS
    source: QualitySource = QualitySource.STAKEHOLDER


@dataclass(frozen=True)
class Threshold:
    metric: str
    comparator: str
    level: str
    rationale: str = ""


@dataclass(frozen=True)
class HarmFlags:
    life: bool = False
    health: bool = False
    legal_breach: bool = False


@dataclass(frozen=True)
class ProtectionDemand:
    level: int
    rationale: str


@dataclass(frozen=True)
class Evr:
    """Ethical value quality requirement."""

    id: str
    quality: str
    text: str
    kind: EvrKind = EvrKind.ORGANIZATIONAL
    threshold: Threshold | None = None
    risk_path: RiskPath = RiskPath.UNCLASSIFIED
    legal_instruments: tuple[str, ...] = ()
    harm_flags: HarmFlags = field(default_factory=HarmFlags)
    harm_likelihood: HarmLikelihood = HarmLikelihood.UNLIKELY
    protection_demand: ProtectionDemand | None = None


@dataclass(frozen=True)
class Threat:
    id: str
    evr: str
    description: str = ""
    realistic: bool = True


@dataclass(frozen=True)
class Control:
    id: str
    threats: tuple[str, ...]
    form: ControlForm
    description: str = ""
    rigor: int = 1
    status: ControlStatus = ControlStatus.PROPOSED
    implementing_disposition: str | None = None


@dataclass(frozen=True)
class ValueDisposition:
    id: str
    soi_component: str
    implements: tuple[str, ...]
    description: str = ""


@dataclass(frozen=True)
class FunctionalRequirement:
    id: str
    text: str = ""


@dataclass(frozen=True)
class DesignConcept:
    id: str
    name: str
    ethical_refs: tuple[str, ...] = ()
    functional_refs: tuple[str, ...] = ()


@dataclass(frozen=True)
class Persona:
    id: str
    name: str
    stakeholder: str
    kind: StakeholderKind
    narrative: str = ""


@dataclass(frozen=True)
class AttestationSubject:
    kind: SubjectKind
    ref: str = ""


@dataclass(frozen=True)
class Attestation:
    id: str
    subject: AttestationSubject
    signatory_name: str
    signatory_role: SignatoryRole
    date: str
    statement: str = ""
    consent: bool = False


@dataclass(frozen=True)
class ValueMission:
    text: str
    featured: tuple[int, ...] = ()
    signed_by: tuple[str, ...] = ()


@dataclass(frozen=True)
class InvestmentDecision:
    verdict: Verdict
    rationale: str = ""
    attestations: tuple[str, ...] = ()


@dataclass(frozen=True)
class FeedbackEntry:
    id: str
    source: str
    date: str = ""
    text: str = ""
    resulted: tuple[str, ...] = ()
    reprioritization_required: bool = False


MARKET_SOURCE = "market"


@dataclass(frozen=True)
class RegisterDocument:
    project: ProjectMeta
    phase: Phase = Phase.CONCEPT
    soi: Soi = field(default_factory=lambda: Soi(name=""))
    sos_elements: tuple[SosElement, ...] = ()
    stakeholders: tuple[Stakeholder, ...] = ()
    contexts: tuple[ContextOfUse, ...] = ()
    sessions: tuple[ElicitationSession, ...] = ()
    statements: tuple[ValueStatement, ...] = ()
    core_values: tuple[CoreValue, ...] = ()
    qualities: tuple[ValueQuality, ...] = ()
    evrs: tuple[Evr, ...] = ()
    threats: tuple[Threat, ...] = ()
    controls: tuple[Control, ...] = ()
    dispositions: tuple[ValueDisposition, ...] = ()
    functional_requirements: tuple[FunctionalRequirement, ...] = ()
    design_concepts: tuple[DesignConcept, ...] = ()
    personas: tuple[Persona, ...] = ()
    attestations: tuple[Attestation, ...] = ()
    mission: ValueMission | None = None
    investment_decision: InvestmentDecision | None = None
    feedback: tuple[FeedbackEntry, ...] = ()
    alias_map: dict[str, str] = field(default_factory=dict)


class RegisterError(ValueError):
    """Base error for register operations."""


class InvalidTransitionError(RegisterError):
    """Raised when advance_phase is asked for a non-successor phase."""


class UnknownEntityError(RegisterError):
    """Raised when an entity id does not exist in a document or graph."""


@dataclass(frozen=True)
class Violation:
    """One structural invariant breach.

    ``subject`` is the offending entity's id, or ``"register"`` for
    document-level breaches.
    """

    code: str
    subject: str
    message: str


@dataclass(frozen=True)
class GateReport:
    """Failed phase transition: the gate conditions that did not hold."""

    target: Phase
    failures: tuple[str, ...]


class DocIndex:
    """Lookup tables over one document, built once and shared by checks."""

    def __init__(self, doc: RegisterDocument) -> None:
        self.doc = doc
        self.stakeholders = {s.id: s for s in doc.stakeholders}
        self.sessions = {s.id: s for s in doc.sessions}
        self.statements = {s.id: s for s in doc.statements}
        self.core_values = {c.id: c for c in doc.core_values}
        self.qualities = {q.id: q for q in doc.qualities}
        self.evrs = {e.id: e for e in doc.evrs}
        self.threats = {t.id: t for t in doc.threats}
        self.controls = {c.id: c for c in doc.controls}
        self.dispositions = {d.id: d for d in doc.dispositions}
        self.functional_requirements = {f.id: f for f in doc.functional_requirements}
        self.attestations = {a.id: a for a in doc.attestations}

        self.qualities_by_value: dict[int, list[ValueQuality]] = {}
        for q in doc.qualities:
            self.qualities_by_value.setdefault(q.core_value, []).append(q)
        self.evrs_by_quality: dict[str, list[Evr]] = {}
        for e in doc.evrs:
            self.evrs_by_quality.setdefault(e.quality, []).append(e)
        self.threats_by_evr: dict[str, list[Threat]] = {}
        for t in doc.threats:
            self.threats_by_evr.setdefault(t.evr, []).append(t)
        self.controls_by_evr: dict[str, list[Control]] = {}
        for c in doc.controls:
            parent = control_parent(c.id)
            if parent is not None:
                self.controls_by_evr.setdefault(parent, []).append(c)
        self.controls_by_threat: dict[str, list[Control]] = {}
        for c in doc.controls:
            for tid in c.threats:
                self.controls_by_threat.setdefault(tid, []).append(c)

    def evrs_under_value(self, value_id: int) -> list[Evr]:
        out: list[Evr] = []
        for q in self.qualities_by_value.get(value_id, []):
            out.extend(self.evrs_by_quality.get(q.id, []))
        return out

    def attestations_for(self, kind: SubjectKind, ref: str = "") -> list[Attestation]:
        return [
            a
            for a in self.doc.attestations
            if a.subject.kind is kind and a.subject.ref == ref
        ]


def _well_formed_date(value: str) -> bool:
    try:
        datetime.date.fromisoformat(value)
    except ValueError:
        return False
    return True


# Earliest phase at which each collection may be non-empty.
_CONTENT_FLOOR: dict[str, Phase] = {
    "sessions": Phase.EXPLORATION,
    "statements": Phase.EXPLORATION,
    "core_values": Phase.EXPLORATION,
    "qualities": Phase.EXPLORATION,
    "evrs": Phase.EXPLORATION,
    "attestations": Phase.EXPLORATION,
    "threats": Phase.DESIGN,
    "controls": Phase.DESIGN,
    "dispositions": Phase.DESIGN,
    "functional_requirements": Phase.DESIGN,
    "design_concepts": Phase.DESIGN,
    "personas": Phase.DESIGN,
    "feedback": Phase.DESIGN,
}


def validate_register(doc: RegisterDocument) -> tuple[Violation, ...]:
    """Check every structural invariant and return all breaches found.

    An empty result means the document is structurally valid: ids unique,
    references resolved, numbering coherent and contiguous, content
    consistent with the lifecycle phase, and all field-level constraints
    satisfied.
    """
    out: list[Violation] = []

    def bad(code: str, subject: str, message: str) -> None:
        out.append(Violation(code=code, subject=subject, message=message))

    def check_dup(kind: str, ids: list[str]) -> None:
        seen: set[str] = set()
        for eid in ids:
            if eid in seen:
                bad("P010", eid, f"duplicate {kind} id {eid!r}")
            seen.add(eid)

    check_dup("sos element", [s.id for s in doc.sos_elements])
    check_dup("stakeholder", [s.id for s in doc.stakeholders])
    check_dup("context", [c.id for c in doc.contexts])
    check_dup("session", [s.id for s in doc.sessions])
    check_dup("statement", [s.id for s in doc.statements])
    check_dup("core value", [str(c.id) for c in doc.core_values])
    check_dup("quality", [q.id for q in doc.qualities])
    check_dup("evr", [e.id for e in doc.evrs])
    check_dup("threat", [t.id for t in doc.threats])
    check_dup("control", [c.id for c in doc.controls])
    check_dup("disposition", [d.id for d in doc.dispositions])
    check_dup("functional requirement", [f.id for f in doc.functional_requirements])
    check_dup("design concept", [c.id for c in doc.design_concepts])
    check_dup("persona", [p.id for p in doc.personas])
    check_dup("attestation", [a.id for a in doc.attestations])
    check_dup("feedback entry", [f.id for f in doc.feedback])

    idx = DocIndex(doc)

    # Id shape.  Non-numbered kinds use identifier-shaped ids so that the
    # text format can always re-emit them.
    for kind, ids in (
        ("sos element", [s.id for s in doc.sos_elements]),
        ("stakeholder", [s.id for s in doc.stakeholders]),
        ("context", [c.id for c in doc.contexts]),
        ("session", [s.id for s in doc.sessions]),
        ("statement", [s.id for s in doc.statements]),
        ("disposition", [d.id for d in doc.dispositions]),
        ("functional requirement", [f.id for f in doc.functional_requirements]),
        ("design concept", [c.id for c in doc.design_concepts]),
        ("persona", [p.id for p in doc.personas]),
        ("attestation", [a.id for a in doc.attestations]),
        ("feedback entry", [f.id for f in doc.feedback]),
    ):
        for eid in ids:
            if not IDENT_RE.match(eid):
                bad("P012", eid, f"{kind} id {eid!r} is not identifier-shaped")

    evr_and_control_ids = set(idx.evrs) | set(idx.controls)
    for f in doc.functional_requirements:
        if f.id in evr_and_control_ids:
            bad("P010", f.id, "functional requirement id collides with an ethical requirement id")

    # Core value numbering: ids are 1..n in declaration order, ranks a
    # permutation of 1..n.
    for pos, cv in enumerate(doc.core_values, start=1):
        if cv.id != pos:
            bad("P016", str(cv.id), f"core value ids must run 1..{len(doc.core_values)} in order; found {cv.id} at position {pos}")
    ranks = sorted(c.priority_rank for c in doc.core_values)
    if ranks != list(range(1, len(doc.core_values) + 1)):
        bad("P022", "register", "priority ranks do not form a permutation of 1..%d" % len(doc.core_values))

    for cv in doc.core_values:
        if cv.hierarchy_scores is not None:
            for crit, score in zip(
                ("endurance", "depth", "indivisibility", "bearer_independence", "intrinsic_worth"),
                cv.hierarchy_scores.as_tuple(),
            ):
                if not 1 <= score <= 5:
                    bad("P021", str(cv.id), f"hierarchy score {crit} must be 1..5, got {score}")
        for ref in cv.supporting_statements:
            if ref not in idx.statements:
                bad("P011", str(cv.id), f"core value {cv.id} cites unknown statement {ref!r}")

    # Dotted-decimal coherence and contiguity.
    for q in doc.qualities:
        parent = quality_parent(q.id)
        if parent is None:
            bad("P012", q.id, f"quality id {q.id!r} is not of the form N.M")
            continue
        if parent != q.core_value:
            bad("P013", q.id, f"quality id prefix {parent} does not match parent core value {q.core_value}")
        if q.core_value not in idx.core_values:
            bad("P011", q.id, f"quality {q.id} references unknown core value {q.core_value}")
    for value_id, quals in idx.qualities_by_value.items():
        minors = sorted(
            m for m in (int(q.id.split(".")[1]) for q in quals if QUALITY_ID_RE.match(q.id))
        )
        if minors != list(range(1, len(minors) + 1)):
            bad("P016", f"{value_id}", f"quality numbering under core value {value_id} is not contiguous from 1")

    for e in doc.evrs:
        parent = evr_parent(e.id)
        if parent is None:
            bad("P012", e.id, f"EVR id {e.id!r} is not of the form N.M.K")
            continue
        if parent != e.quality:
            bad("P014", e.id, "EVR id prefix does not match parent quality")
        if e.quality not in idx.qualities:
            bad("P011", e.id, f"EVR {e.id} references unknown quality {e.quality!r}")
    for quality_id, evrs in idx.evrs_by_quality.items():
        ks = sorted(int(e.id.split(".")[2]) for e in evrs if EVR_ID_RE.match(e.id))
        if ks != list(range(1, len(ks) + 1)):
            bad("P016", quality_id, f"EVR numbering under quality {quality_id} is not contiguous from 1")

    for e in doc.evrs:
        if e.threshold is not None and e.threshold.comparator not in THRESHOLD_COMPARATORS:
            bad("P020", e.id, f"threshold comparator {e.threshold.comparator!r} is not one of {'/'.join(THRESHOLD_COMPARATORS)}")
        if e.protection_demand is not None:
            if not 1 <= e.protection_demand.level <= 4:
                bad("P021", e.id, f"protection demand must be 1..4, got {e.protection_demand.level}")
            if not e.protection_demand.rationale.strip():
                bad("P033", e.id, f"protection demand on EVR {e.id} has no rationale")
        if e.risk_path is RiskPath.HIGH and e.protection_demand is None:
            bad("P032", e.id, f"high-risk EVR {e.id} has no protection demand")

    for t in doc.threats:
        parent = threat_parent(t.id)
        if parent is None:
            bad("P012", t.id, f"threat id {t.id!r} is not of the form N.M.K-Tj")
            continue
        if parent != t.evr:
            bad("P015", t.id, "threat id prefix does not match its EVR")
        if t.evr not in idx.evrs:
            bad("P011", t.id, f"threat {t.id} references unknown EVR {t.evr!r}")
    js: dict[str, list[int]] = {}
    for t in doc.threats:
        m = THREAT_ID_RE.match(t.id)
        if m:
            js.setdefault(m.group(1), []).append(int(m.group(2)))
    for evr_id, indices in js.items():
        if sorted(indices) != list(range(1, len(indices) + 1)):
            bad("P016", evr_id, f"threat numbering under EVR {evr_id} is not contiguous from 1")

    cs: dict[str, list[int]] = {}
    for c in doc.controls:
        m = CONTROL_ID_RE.match(c.id)
        if m is None:
            bad("P012", c.id, f"control id {c.id!r} is not of the form N.M.K-Cj")
            continue
        cs.setdefault(m.group(1), []).append(int(m.group(2)))
        own_evr = m.group(1)
        if not c.threats:
            bad("P011", c.id, f"control {c.id} mitigates no threats")
        for tid in c.threats:
            if tid not in idx.threats:
                bad("P011", c.id, f"control {c.id} references unknown threat {tid!r}")
            elif threat_parent(tid) != own_evr:
                bad("P024", c.id, f"control {c.id} references threat {tid} outside its EVR {own_evr}")
        if not 1 <= c.rigor <= 4:
            bad("P021", c.id, f"control rigor must be 1..4, got {c.rigor}")
        if c.status is ControlStatus.IMPLEMENTED and c.implementing_disposition is None:
            bad("P025", c.id, f"implemented control {c.id} names no implementing disposition")
        if c.implementing_disposition is not None and c.implementing_disposition not in idx.dispositions:
            bad("P011", c.id, f"control {c.id} references unknown disposition {c.implementing_disposition!r}")
    for evr_id, indices in cs.items():
        if sorted(indices) != list(range(1, len(indices) + 1)):
            bad("P016", evr_id, f"control numbering under EVR {evr_id} is not contiguous from 1")

    for d in doc.dispositions:
        if not d.implements:
            bad("P026", d.id, f"disposition {d.id} implements no controls")
        for cid in d.implements:
            if cid not in idx.controls:
                bad("P011", d.id, f"disposition {d.id} implements unknown control {cid!r}")

    for s in doc.sos_elements:
        if s.tier < 1:
            bad("P021", s.id, f"SOS element tier must be >= 1, got {s.tier}")

    for c in doc.contexts:
        declared = set(c.data_elements)
        types = set(c.data_types)
        for flow in c.data_flows:
            if flow.source not in declared:
                bad("P017", c.id, f"data flow source {flow.source!r} is not a declared element")
            if flow.sink not in declared:
                bad("P017", c.id, f"data flow sink {flow.sink!r} is not a declared element")
            if flow.data_type not in types:
                bad("P017", c.id, f"data flow type {flow.data_type!r} is not a declared data type")

    for session in doc.sessions:
        for ref in session.participants:
            if ref not in idx.stakeholders:
                bad("P011", session.id, f"session {session.id} names unknown stakeholder {ref!r}")
        for lens in session.lenses_used:
            _check_lens(lens, session.id, bad)
        if session.date and not _well_formed_date(session.date):
            bad("P031", session.id, f"session date {session.date!r} is not an ISO date")

    for st in doc.statements:
        if st.session not in idx.sessions:
            bad("P011", st.id, f"statement {st.id} references unknown session {st.session!r}")
        if st.stakeholder not in idx.stakeholders:
            bad("P011", st.id, f"statement {st.id} references unknown stakeholder {st.stakeholder!r}")
        _check_lens(st.lens, st.id, bad)

    for p in doc.personas:
        holder = idx.stakeholders.get(p.stakeholder)
        if holder is None:
            bad("P011", p.id, f"persona {p.id} references unknown stakeholder {p.stakeholder!r}")
        elif p.kind is not holder.kind:
            bad("P035", p.id, f"persona {p.id} kind {p.kind.value} differs from its stakeholder's kind {holder.kind.value}")

    for dc in doc.design_concepts:
        for ref in dc.ethical_refs:
            if ref not in idx.evrs and ref not in idx.controls:
                bad("P011", dc.id, f"design concept {dc.id} references unknown ethical requirement {ref!r}")
        for ref in dc.functional_refs:
            if ref not in idx.functional_requirements:
                bad("P011", dc.id, f"design concept {dc.id} references unknown functional requirement {ref!r}")

    for a in doc.attestations:
        if not a.signatory_name.strip():
            bad("P031", a.id, f"attestation {a.id} has an empty signatory name")
        if not _well_formed_date(a.date):
            bad("P031", a.id, f"attestation {a.id} date {a.date!r} is not an ISO date")
        subj = a.subject
        if subj.kind is SubjectKind.PRIORITY_DECISION:
            canonical = subj.ref.isdigit() and str(int(subj.ref)) == subj.ref
            if not canonical or int(subj.ref) not in idx.core_values:
                bad("P011", a.id, f"attestation {a.id} endorses unknown core value {subj.ref!r}")
        elif subj.kind is SubjectKind.RISK_ACCEPTANCE:
            if subj.ref not in idx.controls:
                bad("P011", a.id, f"attestation {a.id} accepts risk on unknown control {subj.ref!r}")
        elif subj.kind is SubjectKind.MISSION:
            if doc.mission is None:
                bad("P011", a.id, f"attestation {a.id} endorses a mission that is not recorded")
        elif subj.kind is SubjectKind.INVESTMENT_DECISION:
            if doc.investment_decision is None:
                bad("P011", a.id, f"attestation {a.id} endorses an investment decision that is not recorded")
        elif subj.kind is SubjectKind.RULE:
            if not subj.ref.strip():
                bad("P011", a.id, f"attestation {a.id} names no rule id")

    if doc.mission is not None:
        by_rank = {c.priority_rank: c.id for c in doc.core_values}
        for i, ref in enumerate(doc.mission.featured, start=1):
            if ref not in idx.core_values:
                bad("P011", "register", f"mission features unknown core value {ref}")
            elif by_rank.get(i) != ref:
                bad("P027", "register", "mission featured values are not a prefix of the priority order")
        for ref in doc.mission.signed_by:
            if ref not in idx.attestations:
                bad("P011", "register", f"mission cites unknown attestation {ref!r}")

    if doc.investment_decision is not None:
        dec = doc.investment_decision
        resolved: list[Attestation] = []
        for ref in dec.attestations:
            att = idx.attestations.get(ref)
            if att is None:
                bad("P011", "register", f"investment decision cites unknown attestation {ref!r}")
            else:
                resolved.append(att)
        if dec.verdict is Verdict.NO_GO:
            if not dec.rationale.strip():
                bad("P028", "register", "no-go decision has no rationale")
            if not any(a.signatory_role is SignatoryRole.EXECUTIVE for a in resolved):
                bad("P028", "register", "no-go decision carries no executive attestation")

    for fb in doc.feedback:
        if fb.source != MARKET_SOURCE and fb.source not in idx.stakeholders:
            bad("P011", fb.id, f"feedback {fb.id} source {fb.source!r} is neither a stakeholder nor 'market'")
        for ref in fb.resulted:
            if ref not in idx.statements and ref not in idx.qualities:
                bad("P011", fb.id, f"feedback {fb.id} resulted-ref {ref!r} is neither a statement nor a quality")
        if fb.date and not _well_formed_date(fb.date):
            bad("P031", fb.id, f"feedback date {fb.date!r} is not an ISO date")

    # Alias map: direct mappings only, no chains and no self-loops.
    for name, target in doc.alias_map.items():
        if name == target:
            bad("P019", name, f"alias {name!r} maps to itself")
        elif target in doc.alias_map:
            bad("P019", name, f"alias {name!r} maps to {target!r}, which is itself an alias")

    # Phase gating of content.
    for attr, floor in _CONTENT_FLOOR.items():
        if phase_at_least(doc.phase, floor):
            continue
        for entity in getattr(doc, attr):
            bad("P023", entity.id if not isinstance(entity.id, int) else str(entity.id),
                f"{attr.replace('_', ' ')} are not allowed in phase {doc.phase.value}")
    if not phase_at_least(doc.phase, Phase.EXPLORATION):
        if doc.mission is not None:
            bad("P023", "register", f"a mission is not allowed in phase {doc.phase.value}")
        if doc.investment_decision is not None:
            bad("P023", "register", f"an investment decision is not allowed in phase {doc.phase.value}")
    if not phase_at_least(doc.phase, Phase.DEPLOYMENT):
        for c in doc.contexts:
            if c.captured is CaptureStage.POST_DEPLOYMENT:
                bad("P023", c.id, f"post-deployment contexts are not allowed in phase {doc.phase.value}")
        for q in doc.qualities:
            if q.source is QualitySource.POST_DEPLOYMENT:
                bad("P023", q.id, f"post-deployment qualities are not allowed in phase {doc.phase.value}")

    if phase_at_least(doc.phase, Phase.EXPLORATION) and not doc.soi.concept_of_operation.strip():
        bad("P029", "register", f"concept of operation must be recorded before phase {doc.phase.value}")

    _check_line_discipline(doc, bad)

    return tuple(out)


def _check_lens(lens: Lens, subject: str, bad) -> None:
    if lens.kind is LensKind.CULTURAL and not lens.framework.strip():
        bad("P030", subject, "cultural lens carries no framework name")
    if lens.kind is not LensKind.CULTURAL and lens.framework:
        bad("P030", subject, f"{lens.kind.value} lens must not carry a framework name")


def _check_line_discipline(doc: RegisterDocument, bad) -> None:
    """Single-line fields must not contain line breaks.

    Multi-line prose is confined to the note-backed text fields; everything
    else has to survive inside one quoted token of the text format.
    """

    def single(subject: str, label: str, *values: str) -> None:
        for v in values:
            if "\n" in v or "\r" in v:
                bad("P037", subject, f"{label} must not contain line breaks")

    def prose(subject: str, label: str, *values: str) -> None:
        for v in values:
            if "\r" in v:
                bad("P037", subject, f"{label} must not contain carriage returns")

    single("register", "project name", doc.project.name, doc.project.version)
    single("register", "soi field", doc.soi.name, *doc.soi.deployment_regions)
    prose("register", "concept of operation", doc.soi.concept_of_operation)
    for s in doc.sos_elements:
        single(s.id, "sos element name", s.name)
    for s in doc.stakeholders:
        single(s.id, "stakeholder field", s.name, s.region)
        prose(s.id, "stakeholder description", s.description)
        if s.selection_profile is not None:
            p = s.selection_profile
            single(s.id, "selection profile", p.motivation, p.power, p.knowledge, p.legitimization)
    for c in doc.contexts:
        single(c.id, "context field", c.name, *c.data_elements, *c.data_types,
               *c.data_subjects, *c.integrity_expectations)
        for f in c.data_flows:
            single(c.id, "data flow", f.source, f.sink, f.data_type)
    for s in doc.sessions:
        single(s.id, "session date", s.date)
        for lens in s.lenses_used:
            single(s.id, "lens framework", lens.framework)
    for st in doc.statements:
        single(st.id, "statement field", st.lens.framework, *st.named_values, *st.extracted_values)
        prose(st.id, "statement text", st.text)
    for cv in doc.core_values:
        single(str(cv.id), "core value field", cv.name, *cv.aliases)
    for q in doc.qualities:
        single(q.id, "quality name", q.name)
    for e in doc.evrs:
        single(e.id, "EVR text", e.text)
        single(e.id, "legal instrument", *e.legal_instruments)
        if e.threshold is not None:
            single(e.id, "threshold field", e.threshold.metric, e.threshold.comparator,
                   e.threshold.level, e.threshold.rationale)
        if e.protection_demand is not None:
            single(e.id, "protection demand rationale", e.protection_demand.rationale)
    for t in doc.threats:
        prose(t.id, "threat description", t.description)
    for c in doc.controls:
        prose(c.id, "control description", c.description)
    for d in doc.dispositions:
        single(d.id, "soi component", d.soi_component)
        prose(d.id, "disposition description", d.description)
    for f in doc.functional_requirements:
        prose(f.id, "requirement text", f.text)
    for dc in doc.design_concepts:
        single(dc.id, "design concept name", dc.name)
    for p in doc.personas:
        single(p.id, "persona name", p.name)
        prose(p.id, "persona narrative", p.narrative)
    for a in doc.attestations:
        single(a.id, "attestation field", a.signatory_name, a.date, a.subject.ref)
        prose(a.id, "attestation statement", a.statement)
    if doc.mission is not None:
        prose("register", "mission text", doc.mission.text)
    if doc.investment_decision is not None:
        prose("register", "decision rationale", doc.investment_decision.rationale)
    for fb in doc.feedback:
        single(fb.id, "feedback field", fb.date, fb.source, *fb.resulted)
        prose(fb.id, "feedback text", fb.text)
    for name, target in doc.alias_map.items():
        single(name, "alias", name, target)


def new_empty_register(project_name: str) -> RegisterDocument:
    """Create a fresh register in the concept phase with empty collections."""
    if not project_name.strip():
        raise RegisterError("project name must not be empty")
    return RegisterDocument(
        project=ProjectMeta(name=project_name),
        phase=Phase.CONCEPT,
        soi=Soi(name=project_name),
    )


def resolve_alias(doc: RegisterDocument, name: str) -> str:
    """Canonical value name for ``name``; unmapped names pass through.

    Because alias chains are rejected structurally, resolution is
    idempotent: resolving a resolved name returns it unchanged.
    """
    return doc.alias_map.get(name, name)


_SUCCESSOR = {
    Phase.CONCEPT: Phase.EXPLORATION,
    Phase.EXPLORATION: Phase.DESIGN,
    Phase.DESIGN: Phase.DEPLOYMENT,
}


def advance_phase(doc: RegisterDocument, target: Phase) -> RegisterDocument | GateReport:
    """Move the register to the next lifecycle phase if its gate holds.

    Returns the advanced document on success, or a :class:`GateReport`
    naming every gate condition that failed.  Asking for anything but the
    immediate successor raises :class:`InvalidTransitionError`.
    """
    expected = _SUCCESSOR.get(doc.phase)
    if expected is None or target is not expected:
        raise InvalidTransitionError(
            f"cannot advance from {doc.phase.value} to {target.value}; "
            f"expected target {expected.value if expected else 'none'}"
        )

    failures: list[str] = []
    if target is Phase.EXPLORATION:
        if not doc.soi.concept_of_operation.strip():
            failures.append("concept of operation is empty")
    elif target is Phase.DESIGN:
        if not doc.core_values:
            failures.append("no core values defined")
        else:
            ranks = sorted(c.priority_rank for c in doc.core_values)
            if ranks != list(range(1, len(doc.core_values) + 1)):
                failures.append("priority ranks are not fully assigned")
        if not doc.evrs:
            failures.append("no EVRs defined")
        has_no_go = (
            doc.investment_decision is not None
            and doc.investment_decision.verdict is Verdict.NO_GO
        )
        if doc.mission is None and not has_no_go:
            failures.append("neither a value mission nor a no-go decision is recorded")
    elif target is Phase.DEPLOYMENT:
        idx = DocIndex(doc)
        for evr in doc.evrs:
            if evr.risk_path is not RiskPath.HIGH:
                continue
            for threat in idx.threats_by_evr.get(evr.id, []):
                if threat.realistic and not idx.controls_by_threat.get(threat.id):
                    failures.append(
                        f"high-risk EVR {evr.id} has uncontrolled realistic threat {threat.id}"
                    )

    if failures:
        return GateReport(target=target, failures=tuple(failures))

    advanced = replace(doc, phase=target)
    leftover = validate_register(advanced)
    if leftover:
        # Gates only ever relax content restrictions, so this indicates the
        # input document was already invalid.
        raise RegisterError(
            "document is structurally invalid after transition: "
            + "; ".join(v.message for v in leftover[:3])
        )
    return advanced
