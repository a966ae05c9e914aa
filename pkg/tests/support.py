"""Shared builders for the test suite.

Two things live here: a seeded generator of structurally valid registers
used by the bulk round-trip and monotonicity runs, and the table of
violation/repair document pairs behind the monotone-repair checks.
"""

from __future__ import annotations

import random
from dataclasses import replace

from evrforge import model as m

ALL_LENSES = (
    m.Lens(m.LensKind.UTILITARIAN),
    m.Lens(m.LensKind.VIRTUE),
    m.Lens(m.LensKind.DUTY),
)

_WORDS = ["care", "data", "trust", "video", "doctor", "patient", "referral",
          "consent", "cloud", "rating", "記録", "prüfen"]
_SPECIAL = ['"', "\\", "'", "#", ":", "->"]
_VALUE_POOL = ["privacy", "equality", "trust", "health", "efficiency",
               "honesty", "respect"]
_ALIAS_POOL = ["anonymity", "fairness", "candor"]


def _line(rng: random.Random, max_words: int = 4) -> str:
    parts = [rng.choice(_WORDS) for _ in range(rng.randint(1, max_words))]
    if rng.random() < 0.3:
        parts.append(rng.choice(_SPECIAL))
    return " ".join(parts)


def _prose(rng: random.Random, max_lines: int = 3) -> str:
    return "\n".join(_line(rng) for _ in range(rng.randint(0, max_lines)))


def _date(rng: random.Random) -> str:
    return f"20{rng.randint(19, 26)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"


def random_register(rng: random.Random) -> m.RegisterDocument:
    """One structurally valid register with phase-appropriate content."""
    phase = rng.choice(list(m.Phase))
    level = m.PHASE_ORDER[phase]

    regions = [f"R{i}" for i in range(rng.randint(0, 2))]
    conop = _prose(rng)
    if level >= 1 and not conop:
        conop = "operates a remote advice service"

    stakeholders = [
        m.Stakeholder(
            id=f"ST{i}",
            name=_line(rng),
            kind=rng.choice(list(m.StakeholderKind)),
            description=_prose(rng, 2),
            region=rng.choice([""] + regions) if regions else "",
            selection_profile=(
                m.SelectionProfile(motivation=_line(rng), power=_line(rng))
                if rng.random() < 0.2 else None
            ),
        )
        for i in range(rng.randint(0, 3))
    ]
    holder_ids = [s.id for s in stakeholders]

    sos = [
        m.SosElement(
            id=f"S{i}", name=_line(rng),
            cooperation_type=rng.choice(list(m.CooperationType)),
            tier=rng.randint(1, 3),
            processes_personal_data=rng.random() < 0.5,
            in_ethical_scope=rng.random() < 0.5,
            access_to_enabling_elements=rng.random() < 0.5,
        )
        for i in range(rng.randint(0, 2))
    ]

    contexts = []
    for i in range(rng.randint(0, 2)):
        elements = [_line(rng, 2) for _ in range(rng.randint(0, 2))]
        dtypes = [_line(rng, 2) for _ in range(rng.randint(0, 1))]
        flows = []
        if elements and dtypes and rng.random() < 0.7:
            flows.append(m.DataFlow(source=rng.choice(elements),
                                    sink=rng.choice(elements),
                                    data_type=dtypes[0]))
        subjects = []
        if holder_ids and rng.random() < 0.5:
            subjects.append(rng.choice(holder_ids))
        if rng.random() < 0.3:
            subjects.append(_line(rng, 2))
        stage = m.CaptureStage.PRE_DESIGN
        if level >= 3 and rng.random() < 0.3:
            stage = m.CaptureStage.POST_DEPLOYMENT
        contexts.append(m.ContextOfUse(
            id=f"CTX{i}", name=_line(rng), captured=stage,
            data_elements=tuple(elements), data_flows=tuple(flows),
            data_subjects=tuple(subjects), data_types=tuple(dtypes),
            integrity_expectations=tuple(_line(rng) for _ in range(rng.randint(0, 2))),
        ))

    alias_map: dict[str, str] = {}
    for name in rng.sample(_ALIAS_POOL, rng.randint(0, 2)):
        alias_map[name] = rng.choice(_VALUE_POOL)

    sessions: list[m.ElicitationSession] = []
    statements: list[m.ValueStatement] = []
    core_values: list[m.CoreValue] = []
    qualities: list[m.ValueQuality] = []
    evrs: list[m.Evr] = []
    threats: list[m.Threat] = []
    controls: list[m.Control] = []
    dispositions: list[m.ValueDisposition] = []
    funcreqs: list[m.FunctionalRequirement] = []
    concepts: list[m.DesignConcept] = []
    personas: list[m.Persona] = []
    attestations: list[m.Attestation] = []
    feedback: list[m.FeedbackEntry] = []
    mission = None
    decision = None

    if level >= 1:
        for i in range(rng.randint(0, 2)):
            lenses = list(rng.sample(ALL_LENSES, rng.randint(0, 3)))
            if rng.random() < 0.3:
                lenses.append(m.Lens(m.LensKind.CULTURAL, framework=_line(rng, 2)))
            sessions.append(m.ElicitationSession(
                id=f"SES{i}", date=_date(rng) if rng.random() < 0.8 else "",
                participants=tuple(rng.sample(holder_ids,
                                              rng.randint(0, len(holder_ids)))),
                lenses_used=tuple(lenses),
            ))
        if sessions and holder_ids:
            for i in range(rng.randint(0, 4)):
                statements.append(m.ValueStatement(
                    id=f"V{i}",
                    session=rng.choice(sessions).id,
                    stakeholder=rng.choice(holder_ids),
                    lens=rng.choice(ALL_LENSES),
                    text=_prose(rng, 2),
                    polarity=rng.choice(list(m.Polarity)),
                    named_values=tuple(rng.sample(_VALUE_POOL, rng.randint(0, 2))),
                    extracted_values=tuple(rng.sample(_VALUE_POOL, rng.randint(0, 1))),
                ))

        n_values = rng.randint(0, 3)
        ranks = list(range(1, n_values + 1))
        rng.shuffle(ranks)
        for i in range(n_values):
            scores = None
            if rng.random() < 0.6:
                scores = m.HierarchyScores(*(rng.randint(1, 5) for _ in range(5)))
            core_values.append(m.CoreValue(
                id=i + 1, name=rng.choice(_VALUE_POOL), priority_rank=ranks[i],
                aliases=tuple(
                    a for a in rng.sample(_ALIAS_POOL, rng.randint(0, 1))
                ),
                intrinsic=rng.random() < 0.8,
                hierarchy_scores=scores,
                supporting_statements=tuple(
                    s.id for s in rng.sample(statements,
                                             rng.randint(0, min(2, len(statements))))
                ),
            ))
            for minor in range(1, rng.randint(0, 2) + 1):
                source = rng.choice([m.QualitySource.STAKEHOLDER,
                                     m.QualitySource.CONCEPTUAL_INVESTIGATION])
                if level >= 3 and rng.random() < 0.2:
                    source = m.QualitySource.POST_DEPLOYMENT
                qualities.append(m.ValueQuality(
                    id=f"{i + 1}.{minor}", core_value=i + 1, name=_line(rng),
                    direction=rng.choice(list(m.QualityDirection)), source=source,
                ))

        for quality in qualities:
            for k in range(1, rng.randint(0, 2) + 1):
                risk = rng.choice([m.RiskPath.UNCLASSIFIED, m.RiskPath.LOW,
                                   m.RiskPath.HIGH])
                demand = None
                if risk is m.RiskPath.HIGH:
                    demand = m.ProtectionDemand(level=rng.randint(1, 4),
                                                rationale=_line(rng))
                threshold = None
                if rng.random() < 0.5:
                    threshold = m.Threshold(
                        metric=_line(rng, 2),
                        comparator=rng.choice(m.THRESHOLD_COMPARATORS),
                        level=_line(rng, 1), rationale=_line(rng, 2),
                    )
                evrs.append(m.Evr(
                    id=f"{quality.id}.{k}", quality=quality.id, text=_line(rng),
                    kind=rng.choice(list(m.EvrKind)), threshold=threshold,
                    risk_path=risk,
                    legal_instruments=tuple(_line(rng, 1)
                                            for _ in range(rng.randint(0, 1))),
                    harm_flags=m.HarmFlags(life=rng.random() < 0.2,
                                           health=rng.random() < 0.3,
                                           legal_breach=rng.random() < 0.2),
                    harm_likelihood=rng.choice(list(m.HarmLikelihood)),
                    protection_demand=demand,
                ))

        has_mission = rng.random() < 0.5
        has_decision = rng.random() < 0.5
        verdict = rng.choice(list(m.Verdict)) if has_decision else None

        n_att = rng.randint(0, 3)
        subject_choices: list[m.AttestationSubject] = [
            m.AttestationSubject(m.SubjectKind.RULE, "VBE-C08"),
            m.AttestationSubject(m.SubjectKind.RULE, "VBE-C19"),
        ]
        if core_values:
            subject_choices.append(m.AttestationSubject(
                m.SubjectKind.PRIORITY_DECISION, str(rng.choice(core_values).id)))
        if has_mission:
            subject_choices.append(m.AttestationSubject(m.SubjectKind.MISSION))
        if has_decision:
            subject_choices.append(m.AttestationSubject(m.SubjectKind.INVESTMENT_DECISION))
        for i in range(n_att):
            attestations.append(m.Attestation(
                id=f"A{i}", subject=rng.choice(subject_choices),
                signatory_name=_line(rng, 2),
                signatory_role=rng.choice(list(m.SignatoryRole)),
                date=_date(rng), statement=_prose(rng, 2),
                consent=rng.random() < 0.5,
            ))
        if has_decision and verdict is m.Verdict.NO_GO:
            attestations.append(m.Attestation(
                id=f"A{n_att}",
                subject=m.AttestationSubject(m.SubjectKind.INVESTMENT_DECISION),
                signatory_name=_line(rng, 2),
                signatory_role=m.SignatoryRole.EXECUTIVE,
                date=_date(rng), statement="", consent=True,
            ))

        if has_mission:
            by_rank = sorted(core_values, key=lambda c: c.priority_rank)
            featured = tuple(c.id for c in by_rank[:rng.randint(0, len(by_rank))])
            mission = m.ValueMission(
                text=_prose(rng, 2), featured=featured,
                signed_by=tuple(a.id for a in rng.sample(
                    attestations, rng.randint(0, min(1, len(attestations))))),
            )
        if has_decision:
            if verdict is m.Verdict.NO_GO:
                decision = m.InvestmentDecision(
                    verdict=verdict, rationale=_line(rng),
                    attestations=(attestations[-1].id,),
                )
            else:
                decision = m.InvestmentDecision(verdict=verdict,
                                                rationale=_prose(rng, 1))

    if level >= 2:
        for evr in evrs:
            for j in range(1, rng.randint(0, 2) + 1):
                threats.append(m.Threat(
                    id=f"{evr.id}-T{j}", evr=evr.id,
                    description=_prose(rng, 2),
                    realistic=rng.random() < 0.7,
                ))
        threats_by_evr: dict[str, list[m.Threat]] = {}
        for threat in threats:
            threats_by_evr.setdefault(threat.evr, []).append(threat)
        for evr_id, own in threats_by_evr.items():
            for j in range(1, rng.randint(0, 2) + 1):
                chosen = rng.sample(own, rng.randint(1, len(own)))
                controls.append(m.Control(
                    id=f"{evr_id}-C{j}",
                    threats=tuple(t.id for t in chosen),
                    form=rng.choice(list(m.ControlForm)),
                    description=_prose(rng, 2),
                    rigor=rng.randint(1, 4),
                    status=rng.choice([m.ControlStatus.PROPOSED,
                                       m.ControlStatus.ACCEPTED]),
                ))
        if controls:
            for i in range(rng.randint(0, 2)):
                dispositions.append(m.ValueDisposition(
                    id=f"D{i}", soi_component=_line(rng, 2),
                    implements=tuple(c.id for c in rng.sample(
                        controls, rng.randint(1, min(2, len(controls))))),
                    description=_prose(rng, 2),
                ))
        if dispositions:
            controls = [
                replace(c, status=m.ControlStatus.IMPLEMENTED,
                        implementing_disposition=rng.choice(dispositions).id)
                if rng.random() < 0.3 else c
                for c in controls
            ]

        funcreqs = [m.FunctionalRequirement(id=f"F{i}", text=_prose(rng, 2))
                    for i in range(rng.randint(0, 2))]
        if rng.random() < 0.5:
            ethical_pool = [e.id for e in evrs] + [c.id for c in controls]
            concepts.append(m.DesignConcept(
                id="DC0", name=_line(rng),
                ethical_refs=tuple(rng.sample(ethical_pool,
                                              rng.randint(0, min(2, len(ethical_pool))))),
                functional_refs=tuple(f.id for f in rng.sample(
                    funcreqs, rng.randint(0, len(funcreqs)))),
            ))
        if holder_ids:
            holders = {s.id: s for s in stakeholders}
            for i in range(rng.randint(0, 2)):
                ref = rng.choice(holder_ids)
                personas.append(m.Persona(
                    id=f"P{i}", name=_line(rng), stakeholder=ref,
                    kind=holders[ref].kind, narrative=_prose(rng, 2),
                ))
        for i in range(rng.randint(0, 2)):
            source = m.MARKET_SOURCE
            if holder_ids and rng.random() < 0.6:
                source = rng.choice(holder_ids)
            resulted_pool = [s.id for s in statements] + [q.id for q in qualities]
            feedback.append(m.FeedbackEntry(
                id=f"FB{i}", source=source,
                date=_date(rng) if rng.random() < 0.8 else "",
                text=_prose(rng, 2),
                resulted=tuple(rng.sample(resulted_pool,
                                          rng.randint(0, min(2, len(resulted_pool))))),
                reprioritization_required=rng.random() < 0.2,
            ))

    doc = m.RegisterDocument(
        project=m.ProjectMeta(name=_line(rng, 2),
                              version=_line(rng, 1) if rng.random() < 0.3 else ""),
        phase=phase,
        soi=m.Soi(name=_line(rng, 2), concept_of_operation=conop,
                  deployment_regions=tuple(regions)),
        sos_elements=tuple(sos),
        stakeholders=tuple(stakeholders),
        contexts=tuple(contexts),
        sessions=tuple(sessions),
        statements=tuple(statements),
        core_values=tuple(core_values),
        qualities=tuple(qualities),
        evrs=tuple(evrs),
        threats=tuple(threats),
        controls=tuple(controls),
        dispositions=tuple(dispositions),
        functional_requirements=tuple(funcreqs),
        design_concepts=tuple(concepts),
        personas=tuple(personas),
        attestations=tuple(attestations),
        mission=mission,
        investment_decision=decision,
        feedback=tuple(feedback),
        alias_map=alias_map,
    )
    violations = m.validate_register(doc)
    assert not violations, f"generator produced an invalid register: {violations[:3]}"
    return doc


# ---------------------------------------------------------------------------
# Violation / repair pairs, one per rule.

def base_doc(phase: m.Phase, **overrides) -> m.RegisterDocument:
    conop = "" if phase is m.Phase.CONCEPT else "runs a remote advice help desk"
    return m.RegisterDocument(
        project=m.ProjectMeta(name="TM"),
        phase=phase,
        soi=m.Soi(name="TM", concept_of_operation=conop),
        **overrides,
    )


def _stakeholder(i: int, kind=m.StakeholderKind.DIRECT, region="") -> m.Stakeholder:
    return m.Stakeholder(id=f"ST{i}", name=f"group {i}", kind=kind, region=region)


def _session(lenses=ALL_LENSES) -> m.ElicitationSession:
    return m.ElicitationSession(id="SES1", date="2020-02-18", lenses_used=tuple(lenses))


def _cv(i: int = 1, rank: int | None = None) -> m.CoreValue:
    return m.CoreValue(id=i, name=f"value {i}", priority_rank=rank or i)


def _quality(qid="1.1", cv=1, direction=m.QualityDirection.SUPPORTS,
             source=m.QualitySource.CONCEPTUAL_INVESTIGATION) -> m.ValueQuality:
    return m.ValueQuality(id=qid, core_value=cv, name=f"quality {qid}",
                          direction=direction, source=source)


def _evr(eid="1.1.1", quality="1.1", **kw) -> m.Evr:
    return m.Evr(id=eid, quality=quality, text=f"requirement {eid}", **kw)


def _high_evr(eid="1.1.1", quality="1.1", **kw) -> m.Evr:
    return _evr(eid, quality, risk_path=m.RiskPath.HIGH,
                legal_instruments=("data protection law",),
                protection_demand=m.ProtectionDemand(3, "breach exposes data"), **kw)


def _threshold() -> m.Threshold:
    return m.Threshold(metric="coverage", comparator=">=", level="95 percent",
                       rationale="audited")


def _attestation(aid: str, subject: m.AttestationSubject,
                 role=m.SignatoryRole.EXECUTIVE, consent=False) -> m.Attestation:
    return m.Attestation(id=aid, subject=subject, signatory_name="Jane Doe",
                         signatory_role=role, date="2020-04-01", consent=consent)


def _rule_attestation(rule_id: str, role=m.SignatoryRole.EXECUTIVE,
                      consent=False) -> m.Attestation:
    return _attestation(f"A_{rule_id[-3:]}",
                        m.AttestationSubject(m.SubjectKind.RULE, rule_id),
                        role=role, consent=consent)


def violation_cases() -> dict[str, tuple[m.RegisterDocument, m.RegisterDocument, str]]:
    """rule id -> (violating doc, minimally repaired doc, expected subject)."""
    cases: dict[str, tuple[m.RegisterDocument, m.RegisterDocument, str]] = {}

    sos_bad = m.SosElement(id="S1", name="cloud",
                           cooperation_type=m.CooperationType.ACKNOWLEDGED,
                           processes_personal_data=True, in_ethical_scope=False,
                           access_to_enabling_elements=True)
    bad = base_doc(m.Phase.EXPLORATION, sos_elements=(sos_bad,))
    good = replace(bad, sos_elements=(replace(sos_bad, in_ethical_scope=True),))
    cases["VBE-R01"] = (bad, good, "S1")

    bad = base_doc(m.Phase.EXPLORATION, stakeholders=(_stakeholder(1),))
    good = replace(bad, stakeholders=(
        _stakeholder(1), _stakeholder(2, m.StakeholderKind.INDIRECT)))
    cases["VBE-R02"] = (bad, good, "register")

    ctx = m.ContextOfUse(id="CTX1", name="use", captured=m.CaptureStage.PRE_DESIGN,
                         integrity_expectations=("consent",))
    bad = base_doc(m.Phase.EXPLORATION)
    cases["VBE-R03"] = (bad, replace(bad, contexts=(ctx,)), "register")

    bad = base_doc(m.Phase.EXPLORATION,
                   sessions=(_session(lenses=ALL_LENSES[:2]),))
    cases["VBE-R05a"] = (bad, replace(bad, sessions=(_session(),)), "SES1")

    bad = base_doc(m.Phase.EXPLORATION, sessions=(_session(),))
    bad = replace(bad, soi=replace(bad.soi, deployment_regions=("AT",)))
    cultural = _session(lenses=ALL_LENSES + (m.Lens(m.LensKind.CULTURAL, "local tradition"),))
    cases["VBE-R05b"] = (bad, replace(bad, sessions=(cultural,)), "register")

    statement = m.ValueStatement(id="V1", session="SES1", stakeholder="ST1",
                                 lens=ALL_LENSES[0], text="a concern")
    bad = base_doc(m.Phase.EXPLORATION, stakeholders=(_stakeholder(1),),
                   sessions=(_session(),), statements=(statement,))
    good = replace(bad, statements=(replace(statement, named_values=("privacy",)),))
    cases["VBE-R06"] = (bad, good, "V1")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),))
    good = replace(bad, attestations=(
        _attestation("A1", m.AttestationSubject(m.SubjectKind.PRIORITY_DECISION, "1")),))
    cases["VBE-R07"] = (bad, good, "1")

    bad = base_doc(m.Phase.DEPLOYMENT)
    entry = m.FeedbackEntry(id="FB1", source=m.MARKET_SOURCE, date="2021-01-15",
                            text="observed misuse")
    cases["VBE-R08"] = (bad, replace(bad, feedback=(entry,)), "register")

    bad = base_doc(
        m.Phase.DESIGN,
        core_values=(_cv(1, rank=1), _cv(2, rank=2)),
        qualities=(_quality("2.1", cv=2),),
        evrs=(_high_evr("2.1.1", "2.1"),),
    )
    good = replace(bad, attestations=(
        _attestation("A1", m.AttestationSubject(m.SubjectKind.PRIORITY_DECISION, "2"),
                     role=m.SignatoryRole.VALUE_EXPERT),))
    cases["VBE-R09"] = (bad, good, "2")

    bad = base_doc(m.Phase.DESIGN)
    good = replace(
        bad,
        attestations=(_attestation(
            "A1", m.AttestationSubject(m.SubjectKind.INVESTMENT_DECISION)),),
        investment_decision=m.InvestmentDecision(
            verdict=m.Verdict.GO, rationale="worth building",
            attestations=("A1",)),
    )
    cases["VBE-R10"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),),
                   qualities=(_quality(source=m.QualitySource.STAKEHOLDER),),
                   evrs=(_evr(risk_path=m.RiskPath.LOW),))
    good = replace(bad, qualities=(_quality(),))
    cases["VBE-R11"] = (bad, good, "1")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),))
    good = replace(bad, evrs=(_evr(risk_path=m.RiskPath.LOW),))
    cases["VBE-R12"] = (bad, good, "1.1")

    misclassified = _evr(risk_path=m.RiskPath.LOW,
                         harm_flags=m.HarmFlags(health=True),
                         harm_likelihood=m.HarmLikelihood.REASONABLY_LIKELY)
    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),),
                   evrs=(misclassified,))
    good = replace(bad, evrs=(replace(
        misclassified, risk_path=m.RiskPath.HIGH,
        protection_demand=m.ProtectionDemand(3, "harm to health is likely")),))
    cases["VBE-R13"] = (bad, good, "1.1.1")

    chain = dict(core_values=(_cv(1),), qualities=(_quality(),),
                 evrs=(_evr(risk_path=m.RiskPath.LOW),),
                 functional_requirements=(m.FunctionalRequirement(id="F1", text="search"),))
    bad = base_doc(m.Phase.DESIGN, **chain)
    good = replace(bad, design_concepts=(
        m.DesignConcept(id="DC1", name="baseline", ethical_refs=("1.1.1",),
                        functional_refs=("F1",)),))
    cases["VBE-R14"] = (bad, good, "register")

    plain = m.SosElement(id="S1", name="cdn", cooperation_type=m.CooperationType.VIRTUAL,
                         tier=1, in_ethical_scope=False)
    bad = base_doc(m.Phase.EXPLORATION, sos_elements=(plain,))
    good = replace(bad, sos_elements=(replace(plain, in_ethical_scope=True),))
    cases["VBE-C01"] = (bad, good, "S1")

    managed = m.SosElement(id="S1", name="cloud", tier=2,
                           cooperation_type=m.CooperationType.DIRECTED,
                           access_to_enabling_elements=False)
    bad = base_doc(m.Phase.EXPLORATION, sos_elements=(managed,))
    good = replace(bad, sos_elements=(
        replace(managed, access_to_enabling_elements=True),))
    cases["VBE-C02"] = (bad, good, "S1")

    bad = base_doc(m.Phase.EXPLORATION, stakeholders=(_stakeholder(1),))
    bad = replace(bad, soi=replace(bad.soi, deployment_regions=("AT",)))
    good = replace(bad, stakeholders=(_stakeholder(1, region="AT"),))
    cases["VBE-C03"] = (bad, good, "AT")

    bare_ctx = m.ContextOfUse(id="CTX1", name="use")
    bad = base_doc(m.Phase.EXPLORATION, contexts=(bare_ctx,))
    good = replace(bad, contexts=(
        replace(bare_ctx, integrity_expectations=("consent first",)),))
    cases["VBE-C04"] = (bad, good, "CTX1")

    bad = base_doc(m.Phase.DEPLOYMENT, contexts=(ctx,))
    good = replace(bad, contexts=(ctx, m.ContextOfUse(
        id="CTX2", name="field use", captured=m.CaptureStage.POST_DEPLOYMENT)))
    cases["VBE-C05"] = (bad, good, "register")

    bad = base_doc(m.Phase.EXPLORATION, sessions=(_session(),))
    cases["VBE-C06"] = (bad, replace(bad, contexts=(ctx,)), "register")

    risk_chain = dict(
        core_values=(_cv(1),), qualities=(_quality(),),
        evrs=(_evr(risk_path=m.RiskPath.LOW),),
        threats=(m.Threat(id="1.1.1-T1", evr="1.1.1", description="goes stale"),),
        controls=(m.Control(id="1.1.1-C1", threats=("1.1.1-T1",),
                            form=m.ControlForm.PROCEDURAL),),
    )
    bad = base_doc(m.Phase.DESIGN, **risk_chain)
    good = replace(bad, dispositions=(
        m.ValueDisposition(id="D1", soi_component="review process",
                           implements=("1.1.1-C1",)),))
    cases["VBE-C07"] = (bad, good, "register")

    bad = base_doc(m.Phase.EXPLORATION)
    good = replace(bad, attestations=(
        _rule_attestation("VBE-C08", role=m.SignatoryRole.VALUE_EXPERT),))
    cases["VBE-C08"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN)
    good = replace(bad, attestations=(
        _rule_attestation("VBE-C09", role=m.SignatoryRole.STAKEHOLDER_REP),))
    cases["VBE-C09"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN)
    good = replace(bad, attestations=(_rule_attestation("VBE-C11"),))
    cases["VBE-C11"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN)
    good = replace(bad, attestations=(
        _rule_attestation("VBE-C12", role=m.SignatoryRole.STAKEHOLDER_REP,
                          consent=True),))
    cases["VBE-C12"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN)
    good = replace(
        bad,
        attestations=(_attestation("A1", m.AttestationSubject(m.SubjectKind.MISSION)),),
        mission=m.ValueMission(text="we build for people", signed_by=("A1",)),
    )
    cases["VBE-C13"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),))
    good = replace(bad, qualities=(_quality(),),
                   evrs=(_evr(risk_path=m.RiskPath.LOW),))
    cases["VBE-C14a"] = (bad, good, "1")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),),
                   evrs=(_evr(risk_path=m.RiskPath.LOW),))
    good = replace(bad, evrs=(_evr(risk_path=m.RiskPath.LOW, threshold=_threshold()),))
    cases["VBE-C14b"] = (bad, good, "1.1.1")

    direct_persona = m.Persona(id="P1", name="a user", stakeholder="ST1",
                               kind=m.StakeholderKind.DIRECT)
    bad = base_doc(m.Phase.DESIGN, stakeholders=(_stakeholder(1),),
                   personas=(direct_persona,))
    good = replace(
        bad,
        stakeholders=(_stakeholder(1), _stakeholder(2, m.StakeholderKind.INDIRECT)),
        personas=(direct_persona,
                  m.Persona(id="P2", name="a neighbour", stakeholder="ST2",
                            kind=m.StakeholderKind.INDIRECT)),
    )
    cases["VBE-C15"] = (bad, good, "register")

    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),),
                   evrs=(_evr(risk_path=m.RiskPath.LOW),))
    good = replace(bad, threats=(
        m.Threat(id="1.1.1-T1", evr="1.1.1", description="could drift"),))
    cases["VBE-C16"] = (bad, good, "1.1.1")

    market_entry = m.FeedbackEntry(id="FB1", source=m.MARKET_SOURCE, text="press report")
    bad = base_doc(m.Phase.DESIGN, stakeholders=(_stakeholder(1),),
                   feedback=(market_entry,))
    good = replace(bad, feedback=(
        market_entry,
        m.FeedbackEntry(id="FB2", source="ST1", text="asked for clearer wording")))
    cases["VBE-C17"] = (bad, good, "register")

    sibling = _evr("1.1.2", "1.1")
    bad = base_doc(m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),),
                   evrs=(_high_evr(), sibling))
    good = replace(bad, evrs=(_high_evr(), replace(sibling, risk_path=m.RiskPath.LOW)))
    cases["VBE-C18"] = (bad, good, "1.1.2")

    bad = base_doc(m.Phase.DEPLOYMENT)
    good = replace(bad, attestations=(
        _rule_attestation("VBE-C19", role=m.SignatoryRole.ENGINEER),))
    cases["VBE-C19"] = (bad, good, "register")

    accepted = m.Control(id="1.1.1-C1", threats=("1.1.1-T1",),
                         form=m.ControlForm.STRUCTURAL, rigor=3,
                         status=m.ControlStatus.ACCEPTED)
    bad = base_doc(
        m.Phase.DESIGN, core_values=(_cv(1),), qualities=(_quality(),),
        evrs=(_high_evr(),),
        threats=(m.Threat(id="1.1.1-T1", evr="1.1.1", description="breach"),),
        controls=(accepted,),
    )
    good = replace(bad, attestations=(
        _attestation("A1", m.AttestationSubject(m.SubjectKind.RISK_ACCEPTANCE, "1.1.1-C1"),
                     role=m.SignatoryRole.ENGINEER),))
    cases["VBE-C20"] = (bad, good, "1.1.1-C1")

    return cases
