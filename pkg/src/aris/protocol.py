"""JSON message interface between front ends and the proof engine.

One session holds one document.  Requests are JSON objects

    {"protocol": 1, "revision": <int>, "kind": <str>, "payload": {...}}

and every response echoes the revision:

    {"protocol": 1, "revision": <int>, "status": "ok"|"error", "payload": ...}

Revisions must strictly increase per session; the revision advances only
when a request succeeds, so replaying a recorded log reproduces the final
document byte for byte.  Document content crosses the boundary as proof
file text, never as paths: front ends in sandboxes (a browser, say) do
open/save as pure byte exchanges.

Run ``python -m aris.protocol`` for a line-delimited stdio server: one
request per line in, one response per line out.
"""
from __future__ import annotations

import json
from typing import Mapping

from . import persistence
from .diagnostics import Verdict
from .parser import ParseError, parse
from .persistence import FormatError
from .proof import (
    GoalResult,
    InvalidEditTarget,
    ProofDocument,
    apply_edit,
    check_line,
    check_proof,
)
from .render import render

PROTOCOL_VERSION = 1

MALFORMED_REQUEST = "MalformedRequest"
STALE_REVISION = "StaleRevision"


class ProtocolError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def verdict_to_obj(verdict: Verdict) -> dict:
    return {
        "line": verdict.line,
        "status": verdict.status,
        "code": verdict.code,
        "message": verdict.message,
        "position": list(verdict.position) if verdict.position else None,
    }


def goal_to_obj(goal: GoalResult) -> dict:
    return {"statement": render(goal.formula, "ascii"), "achieved": goal.achieved}


class Session:
    """One editing session: a document plus the last applied revision."""

    def __init__(self, document: ProofDocument | None = None):
        self.document = document if document is not None else ProofDocument()
        self.last_revision = 0

    # -- request handlers ---------------------------------------------------

    def _parse_statement(self, payload) -> dict:
        statement = payload.get("statement")
        if not isinstance(statement, str):
            raise ProtocolError(MALFORMED_REQUEST, "payload needs a 'statement' string")
        formula = parse(statement)
        return {
            "unicode": render(formula, "unicode"),
            "ascii": render(formula, "ascii"),
            "latex": render(formula, "latex"),
        }

    def _apply_edit(self, payload) -> dict:
        edit = payload.get("edit")
        if not isinstance(edit, Mapping):
            raise ProtocolError(MALFORMED_REQUEST, "payload needs an 'edit' object")
        self.document = apply_edit(self.document, dict(edit))
        return {"document": persistence.document_to_obj(self.document)}

    def _check_proof(self, payload) -> dict:
        report = check_proof(self.document)
        return {
            "verdicts": [verdict_to_obj(v) for v in report.verdicts],
            "goals": [goal_to_obj(g) for g in report.goals],
        }

    def _check_line(self, payload) -> dict:
        line = payload.get("line")
        if not isinstance(line, int) or not 1 <= line <= len(self.document.lines):
            raise ProtocolError(MALFORMED_REQUEST, "payload needs a valid 'line' number")
        return {"verdict": verdict_to_obj(check_line(self.document, line))}

    def _load_document(self, payload) -> dict:
        content = payload.get("content")
        if not isinstance(content, str):
            raise ProtocolError(MALFORMED_REQUEST, "payload needs a 'content' string")
        self.document = persistence.loads(content)
        return {"document": persistence.document_to_obj(self.document)}

    def _save_document(self, payload) -> dict:
        name = payload.get("name") or "proof"
        if not isinstance(name, str):
            raise ProtocolError(MALFORMED_REQUEST, "'name' must be a string")
        return {
            "content": persistence.dumps(self.document),
            "filename": persistence.with_extension(name).name,
        }

    def _export_latex(self, payload) -> dict:
        name = payload.get("name") or "proof"
        if not isinstance(name, str):
            raise ProtocolError(MALFORMED_REQUEST, "'name' must be a string")
        if not name.endswith(".tex"):
            name += ".tex"
        return {"content": persistence.export_latex(self.document), "filename": name}

    def _import_document(self, payload) -> dict:
        content = payload.get("content")
        if not isinstance(content, str):
            raise ProtocolError(MALFORMED_REQUEST, "payload needs a 'content' string")
        source = persistence.loads(content)
        self.document = persistence.import_proof(self.document, source)
        return {"document": persistence.document_to_obj(self.document)}

    _HANDLERS = {
        "parse_statement": _parse_statement,
        "apply_edit": _apply_edit,
        "check_proof": _check_proof,
        "check_line": _check_line,
        "load_document": _load_document,
        "save_document": _save_document,
        "export_latex": _export_latex,
        "import_document": _import_document,
    }

    # -- dispatch -----------------------------------------------------------

    def handle(self, request) -> dict:
        """Process one request object (or JSON string); never raises."""
        if isinstance(request, (str, bytes)):
            try:
                request = json.loads(request)
            except json.JSONDecodeError as exc:
                return self._error(0, MALFORMED_REQUEST, f"not valid JSON: {exc}")
        if not isinstance(request, Mapping):
            return self._error(0, MALFORMED_REQUEST, "a request is a JSON object")
        revision = request.get("revision")
        if not isinstance(revision, int):
            return self._error(0, MALFORMED_REQUEST, "'revision' must be an integer")
        if request.get("protocol") != PROTOCOL_VERSION:
            return self._error(
                revision,
                MALFORMED_REQUEST,
                f"this engine speaks protocol {PROTOCOL_VERSION}",
            )
        kind = request.get("kind")
        handler = self._HANDLERS.get(kind)
        if handler is None:
            return self._error(revision, MALFORMED_REQUEST, f"unknown kind {kind!r}")
        if revision <= self.last_revision:
            return self._error(
                revision,
                STALE_REVISION,
                f"revision {revision} is not after the last applied "
                f"revision {self.last_revision}",
            )
        payload = request.get("payload") or {}
        if not isinstance(payload, Mapping):
            return self._error(revision, MALFORMED_REQUEST, "'payload' must be an object")
        try:
            result = handler(self, payload)
        except ProtocolError as exc:
            return self._error(revision, exc.code, exc.message)
        except ParseError as exc:
            return self._error(revision, "ParseError", str(exc), position=exc.position)
        except persistence.VersionError as exc:
            return self._error(revision, "VersionError", str(exc))
        except FormatError as exc:
            return self._error(revision, "FormatError", str(exc))
        except InvalidEditTarget as exc:
            return self._error(revision, type(exc).__name__, str(exc))
        self.last_revision = revision
        return {
            "protocol": PROTOCOL_VERSION,
            "revision": revision,
            "status": "ok",
            "payload": result,
        }

    @staticmethod
    def _error(revision: int, code: str, message: str, position: int | None = None) -> dict:
        payload = {"code": code, "message": message}
        if position is not None:
            payload["position"] = position
        return {
            "protocol": PROTOCOL_VERSION,
            "revision": revision,
            "status": "error",
            "payload": payload,
        }


def handle(request, session: Session) -> dict:
    """Dispatch one request against a session."""
    return session.handle(request)


def serve_stdio(stdin=None, stdout=None) -> None:
    """Line-delimited server: one JSON request per line, one response out."""
    import sys

    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    session = Session()
    for raw in stdin:
        raw = raw.strip()
        if not raw:
            continue
        response = session.handle(raw)
        stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        stdout.flush()


if __name__ == "__main__":
    serve_stdio()
