#!/usr/bin/env python3
"""Regenerate the derived test fixtures.

Builds the full telemedicine elicitation register (14 core values, 214
negative and 253 positive statement potentials) and derives the
warnings-only and error fixtures from the hand-written clean one.  Output
is deterministic; run from anywhere:

    python scripts/build_fixtures.py
"""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from evrforge import model as m
from evrforge import analytics, dsl, rules

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

CORE_VALUES = [
    # (name, rank, scores); respect and efficiency carry the scores used by
    # the ranking fixture checks.
    ("equality", 1, (5, 5, 4, 4, 5)),
    ("trustworthiness", 2, (4, 4, 3, 3, 4)),
    ("accuracy", 3, (4, 3, 3, 3, 3)),
    ("privacy", 4, (5, 4, 4, 4, 4)),
    ("health", 5, (5, 5, 5, 4, 5)),
    ("knowledge", 6, (4, 4, 3, 4, 4)),
    ("honesty", 7, (5, 4, 4, 4, 5)),
    ("respect", 8, (5, 5, 5, 4, 5)),
    ("accountability", 9, (4, 3, 3, 3, 3)),
    ("reliability", 10, (4, 3, 3, 2, 3)),
    ("security", 11, (4, 4, 3, 3, 3)),
    ("transparency", 12, (3, 3, 3, 3, 3)),
    ("convenience", 13, (2, 2, 2, 2, 1)),
    ("efficiency", 14, (2, 2, 3, 2, 1)),
]

EXTRA_VALUES = ["patience", "autonomy", "solidarity", "human touch"]

ALIASES = {
    "anonymity": "privacy",
    "data control": "privacy",
    "fairness": "equality",
    "candor": "honesty",
}

# Alias spellings cycled in for some mentions of their canonical value.
ALIAS_SPELLINGS = {
    "privacy": ["anonymity", "data control"],
    "equality": ["fairness"],
    "honesty": ["candor"],
}

STAKEHOLDERS = [
    ("ST01", "students seeking sick notes", "direct", ""),
    ("ST02", "elderly patients without internet access", "direct", "AT"),
    ("ST03", "uninsured foreign minority patients", "direct", "AT"),
    ("ST04", "chronically ill patients", "direct", "AT"),
    ("ST05", "rural patients", "direct", "AT"),
    ("ST06", "shy patients with delicate conditions", "direct", ""),
    ("ST07", "platform general practitioners", "direct", "AT"),
    ("ST08", "practice assistants", "direct", ""),
    ("ST09", "health insurers", "direct", "AT"),
    ("ST10", "platform operations staff", "direct", ""),
    ("ST11", "recommended specialists", "direct", "AT"),
    ("ST12", "patient advocacy group", "direct", "AT"),
    ("ST13", "young doctors without ratings", "indirect", "AT"),
    ("ST14", "the doctoral community", "indirect", "AT"),
    ("ST15", "doctors declining telemedicine", "indirect", ""),
    ("ST16", "hospital emergency departments", "indirect", "AT"),
    ("ST17", "medical associations", "indirect", "AT"),
    ("ST18", "families of patients", "indirect", ""),
    ("ST19", "public health authorities", "indirect", "AT"),
    ("ST20", "future patients", "indirect", ""),
]

SESSIONS = [("SES1", "2019-06-12"), ("SES2", "2019-06-19"), ("SES3", "2019-07-03")]

NEGATIVE_TEXTS = [
    "Mutual rating breeds rivalry between colleagues.",
    "Quick referrals invite patients to game the system.",
    "Remote diagnosis loses the human touch of an examination.",
    "Health data in a partner cloud is one breach away from exposure.",
    "Doctors outside the rating loop become invisible.",
]

POSITIVE_TEXTS = [
    "Uninsured patients finally reach a good specialist.",
    "Shy patients get advice on delicate conditions from home.",
    "Doctors learn from each other across regions.",
    "Fewer waiting rooms means less lost time for everyone.",
    "Peer recommendations reward quality over marketing.",
]


def spelled(name: str, mention: int) -> str:
    """Rotate alias spellings into some mentions of a canonical name."""
    variants = ALIAS_SPELLINGS.get(name)
    if variants and mention % 3 == 1:
        return variants[(mention // 3) % len(variants)]
    return name


def value_pair(i: int) -> tuple[str, str]:
    pool = [name for name, _, _ in CORE_VALUES] + EXTRA_VALUES
    first = pool[i % len(pool)]
    second = pool[(i * 7 + 3) % len(pool)]
    if second == first:
        second = pool[(i * 7 + 4) % len(pool)]
    return first, second


def build_statements() -> list[m.ValueStatement]:
    lenses = [m.LensKind.UTILITARIAN, m.LensKind.VIRTUE, m.LensKind.DUTY]
    statements: list[m.ValueStatement] = []

    def mk(number: int, polarity: m.Polarity, text: str, named: str,
           extracted: str | None) -> m.ValueStatement:
        session = SESSIONS[number % len(SESSIONS)][0]
        holder = STAKEHOLDERS[number % len(STAKEHOLDERS)][0]
        return m.ValueStatement(
            id=f"V{number:03d}",
            session=session,
            stakeholder=holder,
            lens=m.Lens(kind=lenses[number % len(lenses)]),
            text=text,
            polarity=polarity,
            named_values=(named,),
            extracted_values=(extracted,) if extracted else (),
        )

    number = 1
    # 107 negative statements, two distinct canonical values each: 214
    # negative potentials.
    for i in range(107):
        first, second = value_pair(i)
        statements.append(mk(
            number, m.Polarity.NEGATIVE, NEGATIVE_TEXTS[i % len(NEGATIVE_TEXTS)],
            spelled(first, i), spelled(second, i + 1),
        ))
        number += 1
    # 126 positive statements with two values plus one with a single value:
    # 253 positive potentials.
    for i in range(126):
        first, second = value_pair(i + 200)
        statements.append(mk(
            number, m.Polarity.POSITIVE, POSITIVE_TEXTS[i % len(POSITIVE_TEXTS)],
            spelled(first, i), spelled(second, i + 1),
        ))
        number += 1
    statements.append(mk(number, m.Polarity.POSITIVE,
                         POSITIVE_TEXTS[0], "equality", None))
    return statements


def build_tm_full() -> m.RegisterDocument:
    doc = m.RegisterDocument(
        project=m.ProjectMeta(name="TM", version="elicitation"),
        phase=m.Phase.EXPLORATION,
        soi=m.Soi(
            name="TM telemedicine platform",
            concept_of_operation=(
                "Patients dial into the platform, speak to a general practitioner "
                "by video\nand are referred to a well-rated regional specialist."
            ),
            deployment_regions=("AT",),
        ),
        stakeholders=tuple(
            m.Stakeholder(id=sid, name=name, kind=m.StakeholderKind(kind),
                          region=region)
            for sid, name, kind, region in STAKEHOLDERS
        ),
        contexts=(
            m.ContextOfUse(
                id="CTX1",
                name="video consultation",
                captured=m.CaptureStage.PRE_DESIGN,
                data_elements=("video session", "patient record store"),
                data_flows=(m.DataFlow("video session", "patient record store",
                                       "health data"),),
                data_subjects=("ST01", "ST07"),
                data_types=("health data",),
                integrity_expectations=(
                    "health data is collected with consent",
                    "health data stays free of commercial reuse",
                ),
            ),
        ),
        sessions=tuple(
            m.ElicitationSession(
                id=sid,
                date=date,
                participants=tuple(s[0] for s in STAKEHOLDERS[i::3]),
                lenses_used=(
                    m.Lens(m.LensKind.UTILITARIAN),
                    m.Lens(m.LensKind.VIRTUE),
                    m.Lens(m.LensKind.DUTY),
                ),
            )
            for i, (sid, date) in enumerate(SESSIONS)
        ),
        statements=tuple(build_statements()),
        core_values=tuple(
            m.CoreValue(
                id=i + 1, name=name, priority_rank=rank,
                hierarchy_scores=m.HierarchyScores(*scores),
            )
            for i, (name, rank, scores) in enumerate(CORE_VALUES)
        ),
        alias_map=dict(ALIASES),
    )
    violations = m.validate_register(doc)
    if violations:
        raise SystemExit(f"tm_full is structurally invalid: {violations[:3]}")
    tally = analytics.tally_values(doc)
    positive, negative = analytics.tally_totals(tally)
    if (positive, negative) != (253, 214):
        raise SystemExit(f"tally totals off: positive={positive} negative={negative}")
    return doc


def derive_warnings_fixture(clean: m.RegisterDocument) -> m.RegisterDocument:
    """Drop one EVR threshold: exactly one warning, no errors."""
    evrs = tuple(
        replace(e, threshold=None) if e.id == "3.1.1" else e
        for e in clean.evrs
    )
    return replace(clean, evrs=evrs)


def derive_error_fixture(clean: m.RegisterDocument) -> m.RegisterDocument:
    """Flip every indirect stakeholder to direct: VBE-R02 must fire."""
    flipped = tuple(replace(s, kind=m.StakeholderKind.DIRECT)
                    for s in clean.stakeholders)
    personas = tuple(replace(p, kind=m.StakeholderKind.DIRECT)
                     for p in clean.personas)
    return replace(clean, stakeholders=flipped, personas=personas)


def main() -> None:
    full = build_tm_full()
    (FIXTURES / "tm_full.evr").write_text(dsl.serialize_canonical(full),
                                          encoding="utf-8")
    print(f"tm_full.evr: {len(full.statements)} statements, "
          f"{len(full.core_values)} core values")

    clean_text = (FIXTURES / "tm_clean.evr").read_text(encoding="utf-8")
    clean_result = dsl.parse_register(clean_text, "tm_clean.evr")
    if clean_result.document is None:
        raise SystemExit(f"tm_clean does not parse: {clean_result.errors[:3]}")
    clean = clean_result.document
    if rules.run_rules(clean):
        raise SystemExit("tm_clean is expected to be diagnostic-free")

    warn_doc = derive_warnings_fixture(clean)
    warn_diags = rules.run_rules(warn_doc)
    if [d.severity for d in warn_diags] != ["warning"]:
        raise SystemExit(f"warnings fixture off: {warn_diags}")
    (FIXTURES / "tm_warnings.evr").write_text(dsl.serialize_canonical(warn_doc),
                                              encoding="utf-8")
    print("tm_warnings.evr:", warn_diags[0].rule_id)

    error_doc = derive_error_fixture(clean)
    error_diags = rules.run_rules(error_doc)
    r02 = [d for d in error_diags if d.rule_id == "VBE-R02"]
    if len(r02) != 1:
        raise SystemExit(f"error fixture off: {error_diags}")
    (FIXTURES / "tm_error.evr").write_text(dsl.serialize_canonical(error_doc),
                                           encoding="utf-8")
    print("tm_error.evr:", ", ".join(sorted({d.rule_id for d in error_diags})))


if __name__ == "__main__":
    main()
