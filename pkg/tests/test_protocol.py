import io
import json

from aris import ProofDocument, Session, check_proof, dumps, handle
from aris.protocol import serve_stdio

from scenarios import trial5_document


def req(revision, kind, **payload):
    return {"protocol": 1, "revision": revision, "kind": kind, "payload": payload}


def test_parse_statement():
    response = Session().handle(req(1, "parse_statement", statement="P -> Q"))
    assert response["status"] == "ok"
    assert response["revision"] == 1
    assert response["payload"]["unicode"] == "P → Q"
    assert response["payload"]["ascii"] == "P -> Q"
    assert response["payload"]["latex"] == "P \\to Q"


def test_parse_error_response():
    response = Session().handle(req(1, "parse_statement", statement="P &"))
    assert response["status"] == "error"
    assert response["payload"]["code"] == "ParseError"
    assert "position" in response["payload"]


def test_malformed_requests():
    session = Session()
    assert session.handle("{not json")["payload"]["code"] == "MalformedRequest"
    assert session.handle(req(1, "fight_tiger"))["payload"]["code"] == "MalformedRequest"
    bad_protocol = {"protocol": 9, "revision": 1, "kind": "check_proof", "payload": {}}
    assert session.handle(bad_protocol)["payload"]["code"] == "MalformedRequest"
    no_revision = {"protocol": 1, "kind": "check_proof", "payload": {}}
    assert session.handle(no_revision)["payload"]["code"] == "MalformedRequest"
    # none of those advanced the session
    assert session.last_revision == 0


def test_stale_revision():
    session = Session()
    assert session.handle(req(2, "check_proof"))["status"] == "ok"
    response = session.handle(req(2, "check_proof"))
    assert response["payload"]["code"] == "StaleRevision"
    assert session.handle(req(3, "check_proof"))["status"] == "ok"


def test_failed_request_does_not_consume_the_revision():
    session = Session()
    bad = session.handle(req(1, "parse_statement", statement="("))
    assert bad["status"] == "error"
    good = session.handle(req(1, "parse_statement", statement="P"))
    assert good["status"] == "ok"


def test_document_bytes_cross_the_boundary():
    doc = trial5_document()
    session = Session()
    loaded = session.handle(req(1, "load_document", content=dumps(doc)))
    assert loaded["status"] == "ok"
    saved = session.handle(req(2, "save_document", name="trial5"))
    assert saved["payload"]["filename"] == "trial5.aris.json"
    assert saved["payload"]["content"] == dumps(doc)


def test_check_proof_equals_direct_library_calls():
    doc = trial5_document()
    session = Session(doc)
    response = session.handle(req(1, "check_proof"))
    report = check_proof(doc)
    assert response["status"] == "ok"
    for wire, direct in zip(response["payload"]["verdicts"], report.verdicts):
        assert wire["status"] == direct.status
        assert wire["code"] == direct.code
        assert wire["message"] == direct.message
        assert wire["line"] == direct.line
    assert response["payload"]["goals"][0]["achieved"]


def test_check_line():
    session = Session(trial5_document())
    response = session.handle(req(1, "check_line", line=22))
    assert response["payload"]["verdict"]["status"] == "valid"
    assert session.handle(req(2, "check_line", line=99))["status"] == "error"


def test_apply_edit_returns_snapshot():
    session = Session()
    response = session.handle(
        req(1, "apply_edit", edit={"op": "add_premise", "statement": "P"})
    )
    assert response["status"] == "ok"
    snapshot = response["payload"]["document"]
    assert snapshot["lines"][0]["statement"] == "P"
    assert session.handle(
        req(2, "apply_edit", edit={"op": "delete_line", "line": 7})
    )["payload"]["code"] == "InvalidEditTarget"


def test_toggle_kind_over_protocol():
    session = Session(trial5_document())
    response = session.handle(
        req(1, "apply_edit", edit={"op": "set_rule", "line": 24, "rule": None})
    )
    assert response["status"] == "ok"


def test_import_document_over_protocol():
    doc = trial5_document()
    session = Session()
    session.handle(req(1, "load_document", content=dumps(doc)))
    response = session.handle(req(2, "import_document", content=dumps(doc)))
    assert response["status"] == "ok"
    assert len(response["payload"]["document"]["lines"]) == 2 * len(doc.lines)


def test_export_latex_over_protocol():
    session = Session(trial5_document())
    response = session.handle(req(1, "export_latex", name="trial5"))
    assert response["payload"]["filename"] == "trial5.tex"
    assert "\\begin{longtable}" in response["payload"]["content"]


def test_replay_reproduces_bytes():
    edits = [
        {"op": "add_premise", "statement": "P -> Q"},
        {"op": "add_premise", "statement": "P"},
        {"op": "add_conclusion", "statement": "Q", "rule": "modus_ponens", "refs": [1, 2]},
        {"op": "set_goals", "statements": ["Q"]},
        {"op": "add_conclusion", "statement": "Q | R", "rule": "addition", "refs": [3]},
        {"op": "delete_line", "line": 4},
    ]
    log = [req(i + 1, "apply_edit", edit=e) for i, e in enumerate(edits)]
    log.append(req(len(log) + 1, "save_document", name="x"))

    def run():
        session = Session()
        outputs = [session.handle(m) for m in log]
        return outputs[-1]["payload"]["content"]

    assert run() == run()


def test_handle_function_wrapper():
    session = Session()
    assert handle(req(1, "check_proof"), session)["status"] == "ok"


def test_stdio_server_round_trip():
    requests = [
        json.dumps(req(1, "parse_statement", statement="P & Q")),
        "",
        json.dumps(req(2, "apply_edit", edit={"op": "add_premise", "statement": "P"})),
        json.dumps(req(3, "check_proof")),
    ]
    stdin = io.StringIO("\n".join(requests) + "\n")
    stdout = io.StringIO()
    serve_stdio(stdin, stdout)
    lines = [json.loads(l) for l in stdout.getvalue().splitlines()]
    assert len(lines) == 3
    assert lines[0]["payload"]["unicode"] == "P ∧ Q"
    assert lines[2]["payload"]["verdicts"][0]["status"] == "valid"
