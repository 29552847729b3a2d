"""Versioned proof-file format, proof import, and LaTeX export.

Files carry the extension ".aris.json" (appended automatically on save)
and hold a single JSON object with the keys version, metadata, goals,
lines — in that order, 2-space indented, UTF-8, LF line endings, with
statements stored in the canonical ascii syntax.  Saving the same
document twice yields byte-identical files.  Verdicts are never stored;
checking is always recomputed after load.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import diagnostics as dg
from .formula import Formula
from .parser import ParseError, parse
from .proof import (
    ASSUMPTION,
    CONCLUSION,
    KINDS,
    PREMISE,
    Metadata,
    ProofDocument,
    ProofLine,
    _structure_verdicts,
)
from .render import render
from .rules import RuleId, display_name

FORMAT_VERSION = 1
EXTENSION = ".aris.json"


class FormatError(ValueError):
    """The file content does not match the proof-file schema."""


class VersionError(FormatError):
    """The file was written by an unknown (newer) format version."""


# ---------------------------------------------------------------------------
# Serialization


def document_to_obj(doc: ProofDocument) -> dict:
    """The document as the JSON object stored in proof files."""
    return {
        "version": FORMAT_VERSION,
        "metadata": {"title": doc.metadata.title, "author": doc.metadata.author},
        "goals": [render(g, "ascii") for g in doc.goals],
        "lines": [
            {
                "index": line.index,
                "kind": line.kind,
                "depth": line.depth,
                "statement": render(line.formula, "ascii"),
                "rule": line.rule.value if line.rule else None,
                "refs": list(line.refs),
            }
            for line in doc.lines
        ],
    }


def dumps(doc: ProofDocument) -> str:
    return json.dumps(document_to_obj(doc), indent=2, ensure_ascii=False) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FormatError(message)


def _check_keys(obj: dict, allowed: tuple[str, ...], where: str) -> None:
    unknown = [k for k in obj if k not in allowed]
    if unknown:
        raise FormatError(
            f"unknown field {unknown[0]!r} in {where} "
            "(was this file written by a newer version?)"
        )


def _parse_statement(text, where: str) -> Formula:
    _require(isinstance(text, str), f"{where}: statement must be a string")
    try:
        return parse(text)
    except ParseError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def document_from_obj(obj) -> ProofDocument:
    """Validate a parsed JSON object and build the document."""
    _require(isinstance(obj, dict), "a proof file holds one JSON object")
    _check_keys(obj, ("version", "metadata", "goals", "lines"), "the document")
    for key in ("version", "metadata", "goals", "lines"):
        _require(key in obj, f"missing field {key!r}")

    version = obj["version"]
    _require(isinstance(version, int), "'version' must be an integer")
    if version != FORMAT_VERSION:
        raise VersionError(
            f"this build reads proof-file version {FORMAT_VERSION}, "
            f"not version {version}"
        )

    meta = obj["metadata"]
    _require(isinstance(meta, dict), "'metadata' must be an object")
    _check_keys(meta, ("title", "author"), "metadata")
    title = meta.get("title", "")
    author = meta.get("author", "")
    _require(
        isinstance(title, str) and isinstance(author, str),
        "metadata title and author must be strings",
    )

    _require(isinstance(obj["goals"], list), "'goals' must be a list")
    goals = tuple(
        _parse_statement(g, f"goal {i}") for i, g in enumerate(obj["goals"], start=1)
    )

    _require(isinstance(obj["lines"], list), "'lines' must be a list")
    lines = []
    for pos, entry in enumerate(obj["lines"], start=1):
        where = f"line {pos}"
        _require(isinstance(entry, dict), f"{where}: must be an object")
        _check_keys(
            entry, ("index", "kind", "depth", "statement", "rule", "refs"), where
        )
        for key in ("index", "kind", "depth", "statement", "rule", "refs"):
            _require(key in entry, f"{where}: missing field {key!r}")
        _require(
            isinstance(entry["index"], int) and entry["index"] == pos,
            f"{where}: lines must be numbered consecutively from 1",
        )
        kind = entry["kind"]
        _require(kind in KINDS, f"{where}: unknown kind {kind!r}")
        depth = entry["depth"]
        _require(
            isinstance(depth, int) and depth >= 0,
            f"{where}: depth must be a non-negative integer",
        )
        formula = _parse_statement(entry["statement"], where)
        rule_name = entry["rule"]
        rule = None
        if rule_name is not None:
            try:
                rule = RuleId(rule_name)
            except ValueError:
                raise FormatError(f"{where}: unknown rule {rule_name!r}") from None
        refs = entry["refs"]
        _require(
            isinstance(refs, list)
            and all(isinstance(r, int) and r >= 1 for r in refs),
            f"{where}: refs must be a list of positive line numbers",
        )
        lines.append(ProofLine(pos, kind, formula, rule, tuple(refs), depth))

    doc = ProofDocument(tuple(lines), goals, Metadata(title, author))
    # Malformed structure is a broken file; unclosed subproofs and arity
    # clashes stay loadable (work in progress) and surface when checking.
    for verdict in _structure_verdicts(doc).values():
        if verdict.code == dg.MALFORMED_STRUCTURE:
            raise FormatError(f"line {verdict.line}: {verdict.message}")
    return doc


def loads(text: str) -> ProofDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return document_from_obj(obj)


def with_extension(path) -> Path:
    path = Path(path)
    if not path.name.endswith(EXTENSION):
        path = path.with_name(path.name + EXTENSION)
    return path


def save(doc: ProofDocument, path) -> Path:
    """Write the canonical serialization; appends ".aris.json" if missing.

    Returns the path actually written.
    """
    final = with_extension(path)
    with open(final, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps(doc))
    return final


def load(path) -> ProofDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


# ---------------------------------------------------------------------------
# Import / merge


def _premise_count(doc: ProofDocument) -> int:
    count = 0
    for line in doc.lines:
        if line.kind != PREMISE:
            break
        count += 1
    return count


def import_proof(target: ProofDocument, source: ProofDocument) -> ProofDocument:
    """Append source's premises to target's premise block and source's
    conclusions after target's, renumbering and remapping all references."""
    tp = _premise_count(target)
    sp = _premise_count(source)
    tc = len(target.lines) - tp

    def map_target(old: int) -> int:
        return old if old <= tp else old + sp

    def map_source(old: int) -> int:
        return tp + old if old <= sp else old + tp + tc

    def shift(line: ProofLine, new_index: int, mapper) -> ProofLine:
        return ProofLine(
            new_index,
            line.kind,
            line.formula,
            line.rule,
            tuple(mapper(r) for r in line.refs),
            line.depth,
        )

    lines = []
    for line in target.lines[:tp]:
        lines.append(shift(line, map_target(line.index), map_target))
    for line in source.lines[:sp]:
        lines.append(shift(line, map_source(line.index), map_source))
    for line in target.lines[tp:]:
        lines.append(shift(line, map_target(line.index), map_target))
    for line in source.lines[sp:]:
        lines.append(shift(line, map_source(line.index), map_source))

    goals = list(target.goals)
    for goal in source.goals:
        if goal not in goals:
            goals.append(goal)
    return ProofDocument(tuple(lines), tuple(goals), target.metadata)


# ---------------------------------------------------------------------------
# LaTeX export


_TEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def _tex_escape(text: str) -> str:
    return "".join(_TEX_SPECIALS.get(ch, ch) for ch in text)


def export_latex(doc: ProofDocument) -> str:
    """A standalone compilable document: one table row per proof line."""
    out = [
        "\\documentclass{article}",
        "\\usepackage{longtable}",
        "\\begin{document}",
    ]
    if doc.metadata.title:
        out.append(f"\\section*{{{_tex_escape(doc.metadata.title)}}}")
    if doc.metadata.author:
        out.append(f"\\textit{{{_tex_escape(doc.metadata.author)}}}\\par")
    out.append("\\begin{longtable}{rlll}")
    for line in doc.lines:
        indent = "\\quad " * line.depth
        formula = render(line.formula, "latex")
        if line.kind == PREMISE:
            rule = "premise"
        elif line.kind == ASSUMPTION:
            rule = "assumption"
        else:
            rule = display_name(line.rule) if line.rule else ""
        refs = ", ".join(str(r) for r in line.refs)
        out.append(f"{line.index} & ${indent}{formula}$ & {rule} & {refs} \\\\")
    out.append("\\end{longtable}")
    if doc.goals:
        goals = ", ".join(f"${render(g, 'latex')}$" for g in doc.goals)
        out.append(f"\\noindent Goals: {goals}\\par")
    out.append("\\end{document}")
    return "\n".join(out) + "\n"
