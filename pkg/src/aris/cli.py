"""Command-line front end: batch checking, formatting, and LaTeX export.

Exit status: 0 when every line is valid and every goal achieved, 1 when
the document was checked but something failed, 2 on input or format
errors.  Set ARIS_NO_COLOR=1 (or redirect output) to disable styling;
--ascii forces the ascii statement syntax in output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import persistence, protocol
from .parser import ParseError
from .persistence import FormatError
from .proof import ASSUMPTION, PREMISE, ProofDocument, check_proof
from .render import render
from .rules import display_name

OK = 0
CHECK_FAILED = 1
INPUT_ERROR = 2


def _use_unicode(args) -> bool:
    if args.ascii:
        return False
    encoding = getattr(sys.stdout, "encoding", None) or ""
    return "utf" in encoding.lower()


def _use_color() -> bool:
    if os.environ.get("ARIS_NO_COLOR"):
        return False
    return getattr(sys.stdout, "isatty", lambda: False)()


def _paint(text: str, color: str, enabled: bool) -> str:
    if not enabled:
        return text
    codes = {"green": "32", "red": "31", "yellow": "33"}
    return f"\x1b[{codes[color]}m{text}\x1b[0m"


def _rule_label(line) -> str:
    if line.kind == PREMISE:
        return "premise"
    if line.kind == ASSUMPTION:
        return "assumption"
    label = display_name(line.rule) if line.rule else "(no rule)"
    if line.refs:
        label += f" [{', '.join(str(r) for r in line.refs)}]"
    return label


def _cmd_check(args) -> int:
    doc = persistence.load(args.file)
    if args.json:
        session = protocol.Session(doc)
        response = session.handle(
            {"protocol": 1, "revision": 1, "kind": "check_proof", "payload": {}}
        )
        print(json.dumps(response, ensure_ascii=False))
        payload = response["payload"]
        all_valid = all(v["status"] == "valid" for v in payload["verdicts"])
        goals_ok = all(g["achieved"] for g in payload["goals"])
        return OK if all_valid and goals_ok else CHECK_FAILED

    style = "unicode" if _use_unicode(args) else "ascii"
    color = _use_color()
    report = check_proof(doc)
    bar = "│ " if style == "unicode" else "| "
    width = max((len(render(l.formula, style)) + 2 * l.depth for l in doc.lines), default=0)
    rwidth = max((len(_rule_label(l)) for l in doc.lines), default=0)
    for line, verdict in zip(doc.lines, report.verdicts):
        statement = bar * line.depth + render(line.formula, style)
        if verdict.ok:
            status = _paint("VALID", "green", color)
        else:
            status = _paint("INVALID", "red", color) + f" [{verdict.code}] {verdict.message}"
        print(f"{line.index:>4}  {statement:<{width}}  {_rule_label(line):<{rwidth}}  {status}")
    for goal in report.goals:
        mark = "goal achieved" if goal.achieved else "goal NOT achieved"
        mark = _paint(mark, "green" if goal.achieved else "yellow", color)
        print(f"{mark}: {render(goal.formula, style)}")
    n_valid = sum(1 for v in report.verdicts if v.ok)
    print(f"{len(doc.lines)} lines checked, {n_valid} valid")
    return OK if report.all_valid and report.goals_achieved else CHECK_FAILED


def _cmd_export_latex(args) -> int:
    doc = persistence.load(args.file)
    tex = persistence.export_latex(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(tex)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(tex)
    return OK


def _cmd_fmt(args) -> int:
    doc = persistence.load(args.file)
    with open(args.file, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(persistence.dumps(doc))
    print(f"formatted {args.file}")
    return OK


def _cmd_new(args) -> int:
    path = persistence.save(ProofDocument(), args.file)
    print(f"created {path}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aris",
        description="Check natural-deduction proofs in propositional and "
        "predicate logic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check a proof file line by line")
    check.add_argument("file")
    check.add_argument("--json", action="store_true", help="emit the protocol response")
    check.add_argument("--ascii", action="store_true", help="force ascii symbols")
    check.set_defaults(func=_cmd_check)

    export = sub.add_parser("export-latex", help="export a proof as LaTeX")
    export.add_argument("file")
    export.add_argument("-o", "--output", help="output path (default: stdout)")
    export.set_defaults(func=_cmd_export_latex)

    fmt = sub.add_parser("fmt", help="rewrite a proof file canonically")
    fmt.add_argument("file")
    fmt.set_defaults(func=_cmd_fmt)

    new = sub.add_parser("new", help="create an empty proof file")
    new.add_argument("file")
    new.set_defaults(func=_cmd_new)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
