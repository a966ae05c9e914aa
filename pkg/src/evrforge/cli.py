"""Command line front end.

Subcommands: check, report, trace, score, diff, init, export.  Diagnostics
go to standard error; reports and exported artifacts go to standard output
or the path given with --out.  Exit codes: 0 clean, 1 warnings only,
2 errors, 3 usage or I/O failure.

Output is byte-deterministic for fixed inputs: reports never include wall
clock time, only dates recorded inside the register itself.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dsl, rules, trace
from . import model as m

EXIT_CLEAN = 0
EXIT_WARNINGS = 1
EXIT_ERRORS = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 3, not 2."""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evrforge",
                     description="Check, analyze and report on ethical value registers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse a register and run the rule catalog")
    p.add_argument("path")
    p.add_argument("--rules", default=None,
                   help="comma-separated rule ids to run (default: all)")
    p.add_argument("--format", dest="fmt", default="text",
                   help="text or interchange")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 when warnings are present")

    p = sub.add_parser("report", help="render an audit, mission or coverage report")
    p.add_argument("path")
    p.add_argument("--kind", default="audit", help="audit, mission or coverage")
    p.add_argument("--out", default=None)

    p = sub.add_parser("trace", help="print the chain from core value to an entity")
    p.add_argument("path")
    p.add_argument("entity_id")

    p = sub.add_parser("score", help="print the ethical maturity score")
    p.add_argument("path")

    p = sub.add_parser("diff", help="compare two register versions")
    p.add_argument("old_path")
    p.add_argument("new_path")

    p = sub.add_parser("init", help="write a commented scaffold register")
    p.add_argument("project_name")
    p.add_argument("--out", default=None)
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("export", help="export interchange, dot or csv artifacts")
    p.add_argument("path")
    p.add_argument("--format", dest="fmt", default="interchange",
                   help="interchange, dot or csv")
    p.add_argument("--out", default=None)

    return parser


def _read_source(path: str) -> str | None:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"evrforge: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return None


def _parse_file(path: str) -> dsl.ParseResult | None:
    source = _read_source(path)
    if source is None:
        return None
    return dsl.parse_register(source, path)


def _print_parse_diagnostics(result: dsl.ParseResult) -> None:
    for diagnostic in result.diagnostics:
        print(diagnostic.render(), file=sys.stderr)


def _write_output(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_CLEAN
    try:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"evrforge: cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_CLEAN


def cmd_check(args) -> int:
    if args.fmt not in ("text", "interchange"):
        print(f"evrforge: unknown format {args.fmt!r}", file=sys.stderr)
        return EXIT_USAGE
    selection = None
    if args.rules:
        selection = {rid.strip() for rid in args.rules.split(",") if rid.strip()}

    result = _parse_file(args.path)
    if result is None:
        return EXIT_USAGE
    if result.document is None:
        _print_parse_diagnostics(result)
        print(f"{len(result.errors)} errors, {len(result.warnings)} warnings",
              file=sys.stderr)
        return EXIT_ERRORS

    try:
        diagnostics = rules.run_rules(result.document, selection)
    except m.RegisterError as exc:
        print(f"evrforge: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.fmt == "interchange":
        payload = {
            "parse_diagnostics": [
                {"code": d.code, "severity": d.severity, "file": d.span.file,
                 "line": d.span.start_line, "col": d.span.start_col,
                 "message": d.message}
                for d in result.diagnostics
            ],
            "diagnostics": [
                {"rule_id": d.rule_id, "severity": d.severity,
                 "subject": d.subject, "message": d.message}
                for d in diagnostics
            ],
        }
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        _print_parse_diagnostics(result)
        for diagnostic in diagnostics:
            print(diagnostic.render(), file=sys.stderr)

    errors = sum(1 for d in diagnostics if d.severity == "error")
    warnings = sum(1 for d in diagnostics if d.severity == "warning")
    warnings += len(result.warnings)
    if args.fmt == "text":
        print(f"{errors} errors, {warnings} warnings", file=sys.stderr)
    if errors:
        return EXIT_ERRORS
    if warnings:
        return EXIT_ERRORS if args.strict else EXIT_WARNINGS
    return EXIT_CLEAN


def _signature_line(doc: m.RegisterDocument, attestation_id: str) -> str:
    att = next((a for a in doc.attestations if a.id == attestation_id), None)
    if att is None:
        return attestation_id
    return f"{att.signatory_name} ({att.signatory_role.value}), {att.date}"


def render_mission_report(doc: m.RegisterDocument) -> str:
    lines = ["VALUE MISSION", "============="]
    if doc.mission is None:
        lines.append("none")
    else:
        lines.extend(doc.mission.text.split("\n") if doc.mission.text else ["none"])
    lines.append("")
    lines.append("featured core values:")
    by_id = {cv.id: cv for cv in doc.core_values}
    if doc.mission is not None and doc.mission.featured:
        for i, ref in enumerate(doc.mission.featured, start=1):
            name = by_id[ref].name if ref in by_id else str(ref)
            lines.append(f"  {i}. {name}")
    else:
        lines.append("  none")
    lines.append("")
    lines.append("signed:")
    if doc.mission is not None and doc.mission.signed_by:
        for ref in doc.mission.signed_by:
            lines.append(f"  {_signature_line(doc, ref)}")
    else:
        lines.append("  none")
    return "\n".join(lines) + "\n"


def _coverage_table(doc: m.RegisterDocument) -> list[str]:
    rows = trace.coverage_report(doc)
    if not rows:
        return ["none"]
    header = trace.COVERAGE_CSV_HEADER.split(",")
    table = [header]
    for row in rows:
        table.append([
            row.core_value, str(row.rank), str(row.qualities), str(row.evrs),
            str(row.thresholds), str(row.threats), str(row.controls),
            str(row.attestations), "yes" if row.addressed else "no",
        ])
    widths = [max(len(line[col]) for line in table) for col in range(len(header))]
    return [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in table
    ]


def render_coverage_report(doc: m.RegisterDocument) -> str:
    lines = ["VALUE COVERAGE", "=============="]
    lines.extend(_coverage_table(doc))
    return "\n".join(lines) + "\n"


_SUBJECT_LABEL = {
    m.SubjectKind.PRIORITY_DECISION: "priority",
    m.SubjectKind.RISK_ACCEPTANCE: "risk",
    m.SubjectKind.MISSION: "mission",
    m.SubjectKind.INVESTMENT_DECISION: "decision",
    m.SubjectKind.RULE: "rule",
}


def render_audit_report(doc: m.RegisterDocument,
                        diagnostics: tuple[rules.Diagnostic, ...]) -> str:
    lines = ["ETHICAL VALUE REGISTER AUDIT", "============================"]
    lines.append(f"project: {doc.project.name}")
    lines.append(f"version: {doc.project.version or 'none'}")
    lines.append(f"phase: {doc.phase.value}")

    lines.extend(["", "MISSION", "-------"])
    if doc.mission is None:
        lines.append("none")
    else:
        lines.extend(doc.mission.text.split("\n") if doc.mission.text else ["none"])
        by_id = {cv.id: cv for cv in doc.core_values}
        featured = "; ".join(
            f"{ref} {by_id[ref].name}" if ref in by_id else str(ref)
            for ref in doc.mission.featured
        )
        lines.append(f"featured: {featured or 'none'}")
        signatures = "; ".join(_signature_line(doc, ref) for ref in doc.mission.signed_by)
        lines.append(f"signed: {signatures or 'none'}")

    lines.extend(["", "PRIORITIES", "----------"])
    if doc.core_values:
        for cv in sorted(doc.core_values, key=lambda c: c.priority_rank):
            lines.append(f"{cv.priority_rank}  {cv.name}")
    else:
        lines.append("none")

    lines.extend(["", "COVERAGE", "--------"])
    lines.extend(_coverage_table(doc))

    lines.extend(["", "DIAGNOSTICS", "-----------"])
    errors = sum(1 for d in diagnostics if d.severity == "error")
    warnings = sum(1 for d in diagnostics if d.severity == "warning")
    lines.append(f"{errors} errors, {warnings} warnings")
    for diagnostic in diagnostics:
        lines.append(diagnostic.render())

    lines.extend(["", "ATTESTATIONS", "------------"])
    if doc.attestations:
        for att in doc.attestations:
            subject = _SUBJECT_LABEL[att.subject.kind]
            if att.subject.ref:
                subject += f" {att.subject.ref}"
            consent = ", consent given" if att.consent else ""
            lines.append(f"{att.id}  {subject}  {att.signatory_name} "
                         f"({att.signatory_role.value})  {att.date}{consent}")
    else:
        lines.append("none")

    lines.extend(["", "MATURITY", "--------"])
    lines.append(trace.maturity_score(doc).render())
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    if args.kind not in ("audit", "mission", "coverage"):
        print(f"evrforge: unknown report kind {args.kind!r}", file=sys.stderr)
        return EXIT_USAGE
    result = _parse_file(args.path)
    if result is None:
        return EXIT_USAGE
    if result.document is None:
        _print_parse_diagnostics(result)
        return EXIT_ERRORS
    doc = result.document
    diagnostics = rules.run_rules(doc)

    if args.kind == "mission":
        text = render_mission_report(doc)
    elif args.kind == "coverage":
        text = render_coverage_report(doc)
    else:
        text = render_audit_report(doc, diagnostics)

    status = _write_output(text, args.out)
    if status != EXIT_CLEAN:
        return status
    if any(d.severity == "error" for d in diagnostics):
        return EXIT_ERRORS
    if diagnostics or result.warnings:
        return EXIT_WARNINGS
    return EXIT_CLEAN


def cmd_trace(args) -> int:
    result = _parse_file(args.path)
    if result is None:
        return EXIT_USAGE
    if result.document is None:
        _print_parse_diagnostics(result)
        return EXIT_ERRORS
    graph = trace.build_graph(result.document)
    try:
        chain = trace.trace_chain(graph, args.entity_id)
    except m.UnknownEntityError as exc:
        print(f"evrforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for node in chain:
        print(f"{node.id}  {node.kind}  {node.name}")
    return EXIT_CLEAN


def cmd_score(args) -> int:
    result = _parse_file(args.path)
    if result is None:
        return EXIT_USAGE
    if result.document is None:
        _print_parse_diagnostics(result)
        return EXIT_ERRORS
    print(trace.maturity_score(result.document).render())
    return EXIT_CLEAN


def cmd_diff(args) -> int:
    old_result = _parse_file(args.old_path)
    if old_result is None:
        return EXIT_USAGE
    new_result = _parse_file(args.new_path)
    if new_result is None:
        return EXIT_USAGE
    if old_result.document is None or new_result.document is None:
        for result in (old_result, new_result):
            if result.document is None:
                _print_parse_diagnostics(result)
        return EXIT_ERRORS

    changes = trace.diff_registers(old_result.document, new_result.document)
    if changes.empty:
        print("no changes")
        return EXIT_CLEAN
    if changes.new_core_values_require_reprioritization:
        print("REPRIORITIZATION REQUIRED")
    for label, bucket in (("added", changes.added), ("removed", changes.removed),
                          ("modified", changes.modified)):
        entries = [(kind, eid) for kind, ids in bucket.items() for eid in ids]
        if not entries:
            continue
        print(f"{label}:")
        for kind, eid in entries:
            print(f"  {kind} {eid}")
    return EXIT_CLEAN


_TEMPLATE = '''\
# Ethical value register scaffold for {name}.
# One example block of every kind; adapt or delete freely.
# Check it any time with: evrforge check <this file>

register {qname} phase design

soi
  name {qname}
  note "Describe in broad outline what the system is meant to do."
  region "EU"
end

# Partner systems the service depends on.
sos S1 "cloud storage provider"
  cooperation acknowledged
  tier 1
  personal_data true
  ethical_scope true
  enabling_access true
end

stakeholder ST1 "end users"
  kind direct
  note "People who use the system directly."
  region "EU"
end

stakeholder ST2 "local communities"
  kind indirect
  note "Affected by the system without ever using it."
end

context CTX1 "everyday use"
  captured pre_design
  element "user records"
  element "analytics store"
  data_type "usage data"
  flow "user records" "analytics store" "usage data"
  subject ST1
  expect "data is processed only for the declared purpose"
end

# An elicitation session must use all three standing lenses; add a
# culture-specific lens for every region the system will be deployed in.
session SES1
  date "2026-01-15"
  participant ST1
  participant ST2
  lens utilitarian
  lens virtue
  lens duty
  lens cultural "a regional ethics tradition"
end

statement V1
  session SES1
  by ST1
  lens utilitarian
  polarity positive
  note "The service saves people time."
  value "convenience"
end

corevalue 1 "privacy" rank 1
  alias "data protection"
  endurance 5
  depth 4
  indivisibility 4
  bearer_independence 4
  intrinsic_worth 5
  support V1
end

quality 1.1 "confidentiality" of 1 direction supports
  source conceptual_investigation
end

evr 1.1.1 "Personal data is encrypted at rest and in transit" of 1.1
  kind technical
  threshold "encrypted records" ">=" "100 percent" "coverage is verifiable in storage audits"
  risk high
  legal "data protection law"
  demand 3 "a breach exposes personal data"
end

threat 1.1.1-T1 of 1.1.1
  realistic true
  note "A misconfigured bucket exposes stored records."
end

control 1.1.1-C1 for 1.1.1-T1
  rigor 3
  form structural
  status implemented
  disposition D1
  note "Storage encryption is enforced by policy and checked in CI."
end

disposition D1
  component "storage layer"
  implements 1.1.1-C1
  note "Default-on encryption for every data store."
end

funcreq F1
  note "Users can search their own records."
end

concept DC1 "baseline architecture"
  ethical 1.1.1
  functional F1
end

persona P1 "a neighbour affected by the rollout"
  stakeholder ST2
  note "Never uses the system, still lives with its effects."
end

attestation A1 priority 1
  by "Jane Example"
  role executive
  date "2026-01-20"
  note "I endorse privacy as our top priority."
end

attestation A2 risk 1.1.1-C1
  by "Sam Example"
  role engineer
  date "2026-01-21"
  note "I stand by the chosen control rigor."
end

attestation A3 mission
  by "Jane Example"
  role executive
  date "2026-01-22"
end

attestation A4 decision
  by "Jane Example"
  role executive
  date "2026-01-22"
end

mission
  note "We build {name} so that people keep control over their personal data."
  feature 1
  signed A3
end

decision go
  note "The value analysis supports proceeding."
  signed A4
end

feedback FB1
  date "2026-02-01"
  from ST1
  note "Early testers ask for clearer consent wording."
  resulted V1
end

alias "secrecy" "privacy"
'''


def scaffold_text(project_name: str) -> str:
    return _TEMPLATE.format(name=project_name, qname=dsl._quote(project_name))


def cmd_init(args) -> int:
    if not args.project_name.strip():
        print("evrforge: project name must not be empty", file=sys.stderr)
        return EXIT_USAGE
    out = args.out if args.out is not None else f"{args.project_name}.evr"
    try:
        mode = "w" if args.force else "x"
        with open(out, mode, encoding="utf-8") as handle:
            handle.write(scaffold_text(args.project_name))
    except FileExistsError:
        print(f"evrforge: {out} already exists (use --force to overwrite)",
              file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"evrforge: cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_CLEAN


def cmd_export(args) -> int:
    if args.fmt not in ("interchange", "dot", "csv"):
        print(f"evrforge: unknown format {args.fmt!r}", file=sys.stderr)
        return EXIT_USAGE
    result = _parse_file(args.path)
    if result is None:
        return EXIT_USAGE
    if result.document is None:
        _print_parse_diagnostics(result)
        return EXIT_ERRORS
    doc = result.document
    if args.fmt == "interchange":
        text = dsl.export_interchange(doc)
    elif args.fmt == "dot":
        text = trace.export_dot(doc)
    else:
        text = trace.coverage_csv(doc)
    return _write_output(text, args.out)


_COMMANDS = {
    "check": cmd_check,
    "report": cmd_report,
    "trace": cmd_trace,
    "score": cmd_score,
    "diff": cmd_diff,
    "init": cmd_init,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return _COMMANDS[args.command](args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
