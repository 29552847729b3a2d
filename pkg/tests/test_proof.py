import random

import pytest

from aris import (
    ASSUMPTION,
    CONCLUSION,
    PREMISE,
    InvalidEditTarget,
    ProofDocument,
    ProofLine,
    TogglePremiseAfterConclusion,
    apply_edit,
    check_line,
    check_proof,
    parse,
    semantics,
    visible_refs,
)
import aris.diagnostics as dg
from aris.formula import is_propositional
from aris.rules import RuleId as R

import randgen
from scenarios import build_document, trial5_document, left_identity_document


def test_visible_same_scope():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (PREMISE, "Q", None, [], 0),
            (CONCLUSION, "P & Q", R.CONJUNCTION, [1, 2], 0),
            (CONCLUSION, "P", R.SIMPLIFICATION, [3], 0),
            (CONCLUSION, "P & P", R.CONJUNCTION, [2, 4], 0),
        ]
    )
    assert visible_refs(doc, 5) == {1, 2, 3, 4}
    assert check_proof(doc).verdicts[4].code == dg.NO_MATCHING_PATTERN


def test_visibility_skips_closed_and_sibling_subproofs():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
            (ASSUMPTION, "R", None, [], 1),
            (CONCLUSION, "R & R", R.IDEMPOTENCE, [4], 1),
            (CONCLUSION, "R -> R & R", R.SUBPROOF, [4, 5], 0),
        ]
    )
    assert visible_refs(doc, 5) == {1, 4}  # the first subproof is closed
    assert visible_refs(doc, 6) == {1}
    report = check_proof(doc)
    assert report.all_valid


def test_nested_subproof_visibility():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (ASSUMPTION, "R", None, [], 2),
            (CONCLUSION, "R & R", R.IDEMPOTENCE, [3], 2),
            (CONCLUSION, "R -> R & R", R.SUBPROOF, [3, 4], 1),
            (CONCLUSION, "Q -> (R -> R & R)", R.SUBPROOF, [2, 5], 0),
        ]
    )
    assert visible_refs(doc, 5) == {1, 2}
    report = check_proof(doc)
    assert report.all_valid, [v for v in report.verdicts if not v.ok]


def test_out_of_scope_reference_code():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
            (CONCLUSION, "Q -> Q & Q", R.SUBPROOF, [2, 3], 0),
            (CONCLUSION, "Q & Q & (Q & Q)", R.CONJUNCTION, [3, 3], 0),
        ]
    )
    assert check_proof(doc).verdicts[4].code == dg.OUT_OF_SCOPE_REFERENCE


def test_subproof_rule_conclusion_shape():
    rows = [
        (PREMISE, "P", None, [], 0),
        (ASSUMPTION, "Q", None, [], 1),
        (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
        (CONCLUSION, "Q -> Q", R.SUBPROOF, [2, 3], 0),
    ]
    doc = build_document(rows)
    verdict = check_proof(doc).verdicts[3]
    assert verdict.code == dg.NO_MATCHING_PATTERN
    assert "Q → Q ∧ Q" in verdict.message


def test_subproof_must_close_immediately_before():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
            (CONCLUSION, "P & P", R.IDEMPOTENCE, [1], 0),
            (CONCLUSION, "Q -> Q & Q", R.SUBPROOF, [2, 3], 0),
        ]
    )
    assert check_proof(doc).verdicts[4].code == dg.OUT_OF_SCOPE_REFERENCE


def test_single_line_subproof_discharges_to_self_implication():
    doc = build_document(
        [
            (ASSUMPTION, "P", None, [], 1),
            (CONCLUSION, "P -> P", R.SUBPROOF, [1, 1], 0),
        ]
    )
    assert check_proof(doc).all_valid


def test_subproof_with_invalid_inner_line_cannot_be_discharged():
    doc = build_document(
        [
            (ASSUMPTION, "P", None, [], 1),
            (CONCLUSION, "Q", R.IDEMPOTENCE, [1], 1),
            (CONCLUSION, "P -> Q", R.SUBPROOF, [1, 2], 0),
        ]
    )
    report = check_proof(doc)
    assert not report.verdicts[1].ok
    assert report.verdicts[2].code == dg.REFERENCE_NOT_VALID


def test_premises_valid_by_fiat_and_modus_ponens_line():
    doc = build_document(
        [
            (PREMISE, "P -> Q", None, [], 0),
            (PREMISE, "P", None, [], 0),
            (CONCLUSION, "Q", R.MODUS_PONENS, [1, 2], 0),
        ]
    )
    assert check_line(doc, 1).ok
    assert check_line(doc, 3).ok


def test_empty_document():
    report = check_proof(ProofDocument())
    assert report.verdicts == ()
    assert report.goals == ()


def test_invalid_line_does_not_suppress_later_checks():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (CONCLUSION, "Q", R.ADDITION, [1], 0),  # wrong
            (CONCLUSION, "P & P", R.IDEMPOTENCE, [1], 0),  # independent, fine
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 0),  # cites the bad line
        ]
    )
    report = check_proof(doc)
    assert [v.ok for v in report.verdicts] == [True, False, True, False]
    assert report.verdicts[3].code == dg.REFERENCE_NOT_VALID


def test_forward_and_missing_references():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (CONCLUSION, "P & P", R.IDEMPOTENCE, [2], 0),
            (CONCLUSION, "P & P", R.IDEMPOTENCE, [9], 0),
        ]
    )
    report = check_proof(doc)
    assert report.verdicts[1].code == dg.FORWARD_REFERENCE
    assert report.verdicts[2].code == dg.FORWARD_REFERENCE


def test_missing_rule_diagnostic():
    doc = build_document([(PREMISE, "P", None, [], 0), (CONCLUSION, "P", None, [], 0)])
    assert check_proof(doc).verdicts[1].code == dg.MISSING_RULE


def test_structural_diagnostics():
    # premise after a conclusion
    doc = ProofDocument(
        (
            ProofLine(1, PREMISE, parse("P")),
            ProofLine(2, CONCLUSION, parse("P & P"), R.IDEMPOTENCE, (1,)),
            ProofLine(3, PREMISE, parse("Q")),
        )
    )
    assert check_proof(doc).verdicts[2].code == dg.MALFORMED_STRUCTURE
    # conclusion cannot open a deeper level
    doc = ProofDocument(
        (
            ProofLine(1, PREMISE, parse("P")),
            ProofLine(2, CONCLUSION, parse("P & P"), R.IDEMPOTENCE, (1,), depth=1),
        )
    )
    assert check_proof(doc).verdicts[1].code == dg.MALFORMED_STRUCTURE
    # broken numbering
    doc = ProofDocument((ProofLine(5, PREMISE, parse("P")),))
    assert check_proof(doc).verdicts[0].code == dg.MALFORMED_STRUCTURE


def test_unclosed_subproof_flagged():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
        ]
    )
    report = check_proof(doc)
    assert report.verdicts[1].code == dg.UNCLOSED_SUBPROOF
    assert report.verdicts[2].ok  # inner lines still get real verdicts


def test_inconsistent_arity_across_lines():
    doc = build_document(
        [
            (PREMISE, "P(a)", None, [], 0),
            (PREMISE, "P(a,b)", None, [], 0),
        ]
    )
    report = check_proof(doc)
    assert report.verdicts[0].ok
    assert report.verdicts[1].code == dg.INCONSISTENT_ARITY


def test_existential_witness_cannot_be_generalized_later():
    doc = build_document(
        [
            (PREMISE, "\\E x (P(x))", None, [], 0),
            (CONCLUSION, "P(a)", R.EXISTENTIAL_INSTANTIATION, [1], 0),
            (CONCLUSION, "\\A x (P(x))", R.UNIVERSAL_GENERALIZATION, [2], 0),
        ]
    )
    report = check_proof(doc)
    assert report.verdicts[1].ok
    assert report.verdicts[2].code == dg.ARBITRARY_CONSTANT_VIOLATION


def test_goal_matching_uses_alpha_equivalence():
    doc = build_document(
        [(PREMISE, "\\A x (P(x))", None, [], 0)],
        goals=["\\A y (P(y))"],
    )
    assert check_proof(doc).goals[0].achieved


def test_goal_requires_valid_top_level_line():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
            (CONCLUSION, "Q -> Q & Q", R.SUBPROOF, [2, 3], 0),
        ],
        goals=["Q & Q"],
    )
    # the only match sits inside a subproof, so the goal is not achieved
    assert not check_proof(doc).goals[0].achieved


def test_trial5_scenario():
    doc = trial5_document()
    report = check_proof(doc)
    assert report.all_valid
    assert report.goals_achieved
    premises = [l.formula for l in doc.lines if l.kind == PREMISE]
    assert semantics.entails(premises, doc.goals[0])


def test_left_identity_scenario():
    report = check_proof(left_identity_document())
    assert report.all_valid
    assert report.goals_achieved


# -- edits --------------------------------------------------------------------


def _doc_for_edits():
    return build_document(
        [
            (PREMISE, "P -> Q", None, [], 0),
            (PREMISE, "P", None, [], 0),
            (CONCLUSION, "Q", R.MODUS_PONENS, [1, 2], 0),
            (CONCLUSION, "Q | R", R.ADDITION, [3], 0),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [3], 0),
        ],
        goals=["Q | R"],
    )


def test_add_premise_to_empty_document():
    doc = apply_edit(ProofDocument(), {"op": "add_premise", "statement": "P"})
    assert len(doc.lines) == 1
    assert doc.lines[0].kind == PREMISE
    assert doc.lines[0].index == 1


def test_delete_line_renumbers_like_a_rebuild():
    doc = _doc_for_edits()
    edited = apply_edit(doc, {"op": "delete_line", "line": 3})
    rebuilt = build_document(
        [
            (PREMISE, "P -> Q", None, [], 0),
            (PREMISE, "P", None, [], 0),
            (CONCLUSION, "Q | R", R.ADDITION, [], 0),  # its ref is gone
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [], 0),
        ],
        goals=["Q | R"],
    )
    assert edited == rebuilt


def test_delete_line_decrements_later_refs():
    doc = _doc_for_edits()
    edited = apply_edit(doc, {"op": "delete_line", "line": 4})
    assert [l.refs for l in edited.lines] == [(), (), (1, 2), (3,)]


def test_toggle_conclusion_without_rule_moves_into_premise_block():
    doc = apply_edit(_doc_for_edits(), {"op": "set_rule", "line": 4, "rule": None})
    doc = apply_edit(doc, {"op": "set_refs", "line": 4, "refs": []})
    toggled = apply_edit(doc, {"op": "toggle_kind", "line": 4})
    assert [l.kind for l in toggled.lines] == [
        PREMISE, PREMISE, PREMISE, CONCLUSION, CONCLUSION,
    ]
    assert toggled.lines[2].formula == parse("Q | R")
    # refs into the moved block were remapped
    assert toggled.lines[3].refs == (1, 2)
    assert toggled.lines[4].refs == (4,)


def test_toggle_conclusion_with_rule_is_refused():
    with pytest.raises(TogglePremiseAfterConclusion):
        apply_edit(_doc_for_edits(), {"op": "toggle_kind", "line": 4})


def test_toggle_premise_moves_to_conclusion_block_start():
    doc = _doc_for_edits()
    toggled = apply_edit(doc, {"op": "toggle_kind", "line": 1})
    assert [l.kind for l in toggled.lines] == [
        PREMISE, CONCLUSION, CONCLUSION, CONCLUSION, CONCLUSION,
    ]
    assert toggled.lines[1].formula == parse("P -> Q")
    # line 3's refs follow both moved lines
    assert toggled.lines[2].refs == (2, 1)


def test_toggle_targets():
    doc = build_document(
        [
            (PREMISE, "P", None, [], 0),
            (ASSUMPTION, "Q", None, [], 1),
            (CONCLUSION, "Q & Q", R.IDEMPOTENCE, [2], 1),
            (CONCLUSION, "Q -> Q & Q", R.SUBPROOF, [2, 3], 0),
        ]
    )
    with pytest.raises(InvalidEditTarget):
        apply_edit(doc, {"op": "toggle_kind", "line": 2})
    with pytest.raises(InvalidEditTarget):
        apply_edit(doc, {"op": "toggle_kind", "line": 3})
    with pytest.raises(InvalidEditTarget):
        apply_edit(doc, {"op": "delete_line", "line": 9})


def test_insert_line_shifts_references():
    doc = _doc_for_edits()
    edited = apply_edit(
        doc,
        {"op": "insert_line", "at": 3, "kind": CONCLUSION, "statement": "P & P",
         "rule": "idempotence", "refs": [2]},
    )
    assert edited.lines[2].formula == parse("P & P")
    assert edited.lines[3].refs == (1, 2)
    assert edited.lines[4].refs == (4,)
    assert [l.index for l in edited.lines] == [1, 2, 3, 4, 5, 6]


def test_begin_and_end_subproof():
    doc = build_document([(PREMISE, "P", None, [], 0)])
    doc = apply_edit(doc, {"op": "begin_subproof", "after": 1, "statement": "Q"})
    assert doc.lines[1].kind == ASSUMPTION and doc.lines[1].depth == 1
    doc = apply_edit(
        doc,
        {"op": "insert_line", "at": 3, "kind": CONCLUSION, "statement": "Q & Q",
         "rule": "idempotence", "refs": [2], "depth": 1},
    )
    doc = apply_edit(
        doc,
        {"op": "end_subproof", "after": 3, "statement": "Q -> Q & Q",
         "rule": "subproof", "refs": [2, 3]},
    )
    assert doc.lines[3].depth == 0
    assert check_proof(doc).all_valid


def test_set_goals_and_set_formula():
    doc = _doc_for_edits()
    doc = apply_edit(doc, {"op": "set_goals", "statements": ["Q & Q", "Q"]})
    assert [str(g) for g in doc.goals] == [str(parse("Q & Q")), str(parse("Q"))]
    doc = apply_edit(doc, {"op": "set_formula", "line": 2, "statement": "R"})
    assert doc.lines[1].formula == parse("R")


def test_set_refs_may_point_forward_and_check_flags_it():
    doc = _doc_for_edits()
    doc = apply_edit(doc, {"op": "set_refs", "line": 3, "refs": [5]})
    assert check_proof(doc).verdicts[2].code == dg.FORWARD_REFERENCE


def test_recheck_after_fixing_edit_updates_dependents():
    broken = apply_edit(_doc_for_edits(), {"op": "set_formula", "line": 2, "statement": "R"})
    report = check_proof(broken)
    assert not report.verdicts[2].ok and report.verdicts[3].code == dg.REFERENCE_NOT_VALID
    fixed = apply_edit(broken, {"op": "set_formula", "line": 2, "statement": "P"})
    assert check_proof(fixed).all_valid


def test_edit_sequences_keep_indices_consecutive():
    rng = random.Random(2718)
    doc = _doc_for_edits()
    ops = ["add_premise", "add_conclusion", "delete_line", "set_formula", "insert_line"]
    for _ in range(200):
        op = rng.choice(ops)
        try:
            if op == "add_premise":
                doc = apply_edit(doc, {"op": op, "statement": "P | Q"})
            elif op == "add_conclusion":
                doc = apply_edit(
                    doc, {"op": op, "statement": "P & Q", "rule": "conjunction",
                          "refs": [rng.randint(1, max(1, len(doc.lines)))]}
                )
            elif op == "delete_line" and doc.lines:
                doc = apply_edit(doc, {"op": op, "line": rng.randint(1, len(doc.lines))})
            elif op == "set_formula" and doc.lines:
                doc = apply_edit(
                    doc, {"op": op, "line": rng.randint(1, len(doc.lines)),
                          "statement": "P -> Q"}
                )
            elif op == "insert_line":
                doc = apply_edit(
                    doc, {"op": op, "at": rng.randint(1, len(doc.lines) + 1),
                          "kind": CONCLUSION, "statement": "Q",
                          "rule": "addition", "refs": [1]}
                )
        except InvalidEditTarget:
            continue
        assert [l.index for l in doc.lines] == list(range(1, len(doc.lines) + 1))
        report = check_proof(doc)
        for line, verdict in zip(doc.lines, report.verdicts):
            if any(r >= line.index for r in line.refs):
                assert not verdict.ok


def test_random_valid_proofs_check_and_are_sound():
    rng = random.Random(1234)
    for _ in range(60):
        doc = randgen.random_valid_proof(rng)
        report = check_proof(doc)
        assert report.all_valid, [v for v in report.verdicts if not v.ok][:1]
        premises = [l.formula for l in doc.lines if l.kind == PREMISE]
        for line, verdict in zip(doc.lines, report.verdicts):
            if (
                line.kind == CONCLUSION
                and line.depth == 0
                and is_propositional(line.formula)
                and all(is_propositional(p) for p in premises)
            ):
                assert semantics.entails(premises, line.formula)
