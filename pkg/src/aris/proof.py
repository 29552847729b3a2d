"""Proof documents: numbered lines, subproofs, goals, checking, editing.

A document is an ordered list of lines numbered 1..n.  Premises form a
contiguous block at the top (depth 0, no rule, no references).  An
assumption line opens a subproof one level deeper than its parent; the
subproof ends just before the next line at or below the parent's depth.
Conclusions cite earlier visible lines and name the rule that justifies
them.  A closed subproof is citable only as a completed unit, by the
Subproof rule, on the line immediately after its end.

Documents are immutable values; edits return new documents with lines
renumbered consecutively and references remapped.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import diagnostics as dg
from .diagnostics import Verdict, invalid, valid
from .formula import ArityConflict, Formula, Implies, alpha_equal, constants, merge_signature
from .parser import parse
from .rules import FAMILY, Family, RuleContext, RuleId, display_name, verify

PREMISE = "premise"
ASSUMPTION = "assumption"
CONCLUSION = "conclusion"
KINDS = (PREMISE, ASSUMPTION, CONCLUSION)


class InvalidEditTarget(ValueError):
    """The edit names a line or position that cannot take it."""


class TogglePremiseAfterConclusion(InvalidEditTarget):
    """Toggling would detach a derived conclusion from its justification."""


@dataclass(frozen=True)
class Metadata:
    title: str = ""
    author: str = ""


@dataclass(frozen=True)
class ProofLine:
    index: int
    kind: str
    formula: Formula
    rule: RuleId | None = None
    refs: tuple[int, ...] = ()
    depth: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown line kind {self.kind!r}")
        object.__setattr__(self, "refs", tuple(int(r) for r in self.refs))


@dataclass(frozen=True)
class ProofDocument:
    lines: tuple[ProofLine, ...] = ()
    goals: tuple[Formula, ...] = ()
    metadata: Metadata = field(default_factory=Metadata)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "goals", tuple(self.goals))

    def __len__(self) -> int:
        return len(self.lines)

    def line(self, index: int) -> ProofLine:
        if not 1 <= index <= len(self.lines):
            raise IndexError(f"no line {index} in a {len(self.lines)}-line proof")
        return self.lines[index - 1]


@dataclass(frozen=True)
class GoalResult:
    formula: Formula
    achieved: bool


@dataclass(frozen=True)
class ProofReport:
    verdicts: tuple[Verdict, ...]
    goals: tuple[GoalResult, ...]

    @property
    def all_valid(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def goals_achieved(self) -> bool:
        return all(g.achieved for g in self.goals)


# ---------------------------------------------------------------------------
# Structure


def _structure_verdicts(doc: ProofDocument) -> dict[int, Verdict]:
    """Structural problems per line position (1-based); empty when sound."""
    problems: dict[int, Verdict] = {}

    def flag(pos: int, code: str, message: str) -> None:
        problems.setdefault(pos, invalid(code, message).at_line(pos))

    in_premise_block = True
    prev_depth = 0
    for pos, line in enumerate(doc.lines, start=1):
        if line.index != pos:
            flag(
                pos,
                dg.MALFORMED_STRUCTURE,
                f"line is numbered {line.index} but sits at position {pos}; "
                "lines must be numbered consecutively from 1",
            )
        if line.depth < 0:
            flag(pos, dg.MALFORMED_STRUCTURE, "line depth cannot be negative")
        if any(r < 1 for r in line.refs):
            flag(pos, dg.MALFORMED_STRUCTURE, "references must be positive line numbers")

        if line.kind == PREMISE:
            if not in_premise_block:
                flag(
                    pos,
                    dg.MALFORMED_STRUCTURE,
                    "premises must form one block before all conclusions",
                )
            if line.depth != 0:
                flag(pos, dg.MALFORMED_STRUCTURE, "premises sit at the top level")
            if line.rule is not None or line.refs:
                flag(
                    pos,
                    dg.MALFORMED_STRUCTURE,
                    "a premise carries no rule and no references",
                )
        else:
            in_premise_block = False

        if line.kind == ASSUMPTION:
            if line.rule is not None or line.refs:
                flag(
                    pos,
                    dg.MALFORMED_STRUCTURE,
                    "an assumption carries no rule and no references",
                )
            if not 1 <= line.depth <= prev_depth + 1:
                flag(
                    pos,
                    dg.MALFORMED_STRUCTURE,
                    f"an assumption here may sit at depth 1..{prev_depth + 1}, "
                    f"not {line.depth}",
                )
        elif line.depth > prev_depth:
            flag(
                pos,
                dg.MALFORMED_STRUCTURE,
                "only an assumption can open a deeper sub-proof",
            )
        prev_depth = max(line.depth, 0)

    # Unclosed subproofs: assumptions still on the open stack at the end.
    stack: list[tuple[int, int]] = []  # (position, depth)
    for pos, line in enumerate(doc.lines, start=1):
        d = max(line.depth, 0)
        while stack and stack[-1][1] > d:
            stack.pop()
        if line.kind == ASSUMPTION:
            if stack and stack[-1][1] == d:
                stack.pop()
            stack.append((pos, d))
    for pos, _d in stack:
        flag(
            pos,
            dg.UNCLOSED_SUBPROOF,
            "this sub-proof is never closed; the document ends inside it",
        )

    # Consistent symbol arities across the document.
    signature: dict = {}
    for pos, line in enumerate(doc.lines, start=1):
        try:
            merge_signature(signature, line.formula)
        except ArityConflict as conflict:
            flag(pos, dg.INCONSISTENT_ARITY, str(conflict))
    return problems


def visible_refs(doc: ProofDocument, at: int) -> frozenset[int]:
    """Line numbers citable from line ``at`` by ordinary rules.

    These are the earlier lines in still-open enclosing scopes.  Lines of a
    subproof that closed immediately before ``at`` are additionally usable,
    but only as the assumption/result pair of the Subproof rule; see
    dischargeable_subproof.
    """
    if not 1 <= at <= len(doc.lines):
        raise IndexError(f"no line {at} in a {len(doc.lines)}-line proof")
    limit = max(doc.lines[at - 1].depth, 0)
    out: set[int] = set()
    for j in range(at - 1, 0, -1):
        line = doc.lines[j - 1]
        d = max(line.depth, 0)
        if d > limit:
            continue
        out.add(j)
        limit = d - 1 if line.kind == ASSUMPTION else d
    return frozenset(out)


def subproof_extent(doc: ProofDocument, assume_at: int) -> tuple[int, int] | None:
    """(first, last) line numbers of the subproof opened at assume_at."""
    if not 1 <= assume_at <= len(doc.lines):
        return None
    opener = doc.lines[assume_at - 1]
    if opener.kind != ASSUMPTION:
        return None
    d = opener.depth
    last = assume_at
    for j in range(assume_at + 1, len(doc.lines) + 1):
        line = doc.lines[j - 1]
        if line.depth < d or (line.kind == ASSUMPTION and line.depth == d):
            break
        last = j
    return assume_at, last


def dischargeable_subproof(doc: ProofDocument, at: int) -> tuple[int, int] | None:
    """The subproof (assumption, last line) that line ``at`` may discharge.

    It must close exactly at ``at``-1 and sit one level deeper than ``at``.
    """
    if at < 2:
        return None
    want_depth = max(doc.lines[at - 1].depth, 0) + 1
    for j in range(at - 1, 0, -1):
        line = doc.lines[j - 1]
        if line.depth < want_depth:
            return None
        if line.kind == ASSUMPTION and line.depth == want_depth:
            extent = subproof_extent(doc, j)
            if extent and extent[1] == at - 1:
                return extent
            return None
    return None


# ---------------------------------------------------------------------------
# Checking


def _rule_context(doc: ProofDocument, at: int, visible: frozenset[int]) -> RuleContext:
    ordered = sorted(visible)
    formulas = tuple(doc.lines[j - 1].formula for j in ordered)
    fixed: frozenset[str] = frozenset()
    witnesses: set[str] = set()
    for j in ordered:
        line = doc.lines[j - 1]
        if line.kind in (PREMISE, ASSUMPTION):
            fixed |= constants(line.formula)
        if line.rule is RuleId.EXISTENTIAL_INSTANTIATION and line.refs:
            ref = line.refs[0]
            if 1 <= ref <= len(doc.lines):
                witnesses.update(
                    constants(line.formula) - constants(doc.lines[ref - 1].formula)
                )
    return RuleContext(
        visible=formulas,
        fixed_constants=fixed,
        ei_witnesses=frozenset(witnesses),
    )


def _check_subproof_line(
    doc: ProofDocument, pos: int, verdicts: dict[int, Verdict]
) -> Verdict:
    line = doc.lines[pos - 1]
    a_ref, c_ref = line.refs
    for r in (a_ref, c_ref):
        if r >= pos:
            return invalid(
                dg.FORWARD_REFERENCE,
                f"line {pos} cites line {r}, which does not precede it",
            )
    extent = dischargeable_subproof(doc, pos)
    if extent is None or (a_ref, c_ref) != extent:
        return invalid(
            dg.OUT_OF_SCOPE_REFERENCE,
            "the Subproof rule cites the assumption and final line of the "
            "sub-proof that ends immediately above, "
            f"not lines {a_ref} and {c_ref}",
        )
    if any(not verdicts[j].ok for j in range(a_ref, c_ref + 1)):
        bad = next(j for j in range(a_ref, c_ref + 1) if not verdicts[j].ok)
        return invalid(
            dg.REFERENCE_NOT_VALID,
            f"the cited sub-proof contains an invalid line ({bad})",
        )
    expected = Implies(
        doc.lines[a_ref - 1].formula, doc.lines[c_ref - 1].formula
    )
    if line.formula == expected:
        return valid()
    from .render import render

    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"discharging this sub-proof concludes '{render(expected)}', "
        f"not '{render(line.formula)}'",
    )


def check_proof(doc: ProofDocument) -> ProofReport:
    """Check every line in order and report goal achievement.

    Invalid lines never stop the pass: later lines still get their own
    verdicts, and a line citing an invalid one is reported as
    ReferenceNotValid rather than inheriting the failure.
    """
    structural = _structure_verdicts(doc)
    verdicts: dict[int, Verdict] = {}
    for pos, line in enumerate(doc.lines, start=1):
        if pos in structural:
            verdicts[pos] = structural[pos]
            continue
        if line.kind in (PREMISE, ASSUMPTION):
            verdicts[pos] = valid().at_line(pos)
            continue
        if line.rule is None:
            verdicts[pos] = invalid(
                dg.MISSING_RULE, "this conclusion names no rule"
            ).at_line(pos)
            continue
        if line.rule in (RuleId.PREMISE, RuleId.ASSUMPTION):
            verdicts[pos] = invalid(
                dg.MALFORMED_STRUCTURE,
                f"'{display_name(line.rule)}' is a line kind, not a rule",
            ).at_line(pos)
            continue
        if line.rule is RuleId.SUBPROOF:
            if len(line.refs) != 2:
                verdicts[pos] = invalid(
                    dg.WRONG_REF_COUNT,
                    "the Subproof rule cites exactly the assumption and the "
                    f"final line of the discharged sub-proof; {len(line.refs)} "
                    "references given",
                ).at_line(pos)
            else:
                verdicts[pos] = _check_subproof_line(doc, pos, verdicts).at_line(pos)
            continue

        visible = visible_refs(doc, pos)
        verdict: Verdict | None = None
        for r in line.refs:
            if r > len(doc.lines):
                verdict = invalid(
                    dg.FORWARD_REFERENCE,
                    f"line {pos} cites line {r}, which does not exist",
                )
                break
            if r >= pos:
                verdict = invalid(
                    dg.FORWARD_REFERENCE,
                    f"line {pos} cites line {r}, which does not precede it",
                )
                break
            if r not in visible:
                verdict = invalid(
                    dg.OUT_OF_SCOPE_REFERENCE,
                    f"line {r} is inside a sub-proof that has ended; it can "
                    "only be used through the Subproof rule on the line "
                    "immediately after that sub-proof",
                )
                break
            cited = verdicts[r]
            # an unclosed subproof's assumption is still a fine assumption;
            # its flag means "never discharged", not "unusable"
            if not cited.ok and cited.code != dg.UNCLOSED_SUBPROOF:
                verdict = invalid(
                    dg.REFERENCE_NOT_VALID,
                    f"line {r} is cited here but is itself not valid",
                )
                break
        if verdict is None:
            ctx = _rule_context(doc, pos, visible)
            ref_formulas = tuple(doc.lines[r - 1].formula for r in line.refs)
            verdict = verify(line.rule, line.formula, ref_formulas, ctx)
        verdicts[pos] = verdict.at_line(pos)

    ordered = tuple(verdicts[pos] for pos in range(1, len(doc.lines) + 1))
    goals = []
    for goal in doc.goals:
        achieved = any(
            line.depth == 0
            and line.kind != ASSUMPTION
            and ordered[pos - 1].ok
            and alpha_equal(line.formula, goal)
            for pos, line in enumerate(doc.lines, start=1)
        )
        goals.append(GoalResult(goal, achieved))
    return ProofReport(ordered, tuple(goals))


def check_line(doc: ProofDocument, at: int) -> Verdict:
    """Verdict for one line, consistent with check_proof on the same document."""
    if not 1 <= at <= len(doc.lines):
        raise IndexError(f"no line {at} in a {len(doc.lines)}-line proof")
    return check_proof(doc).verdicts[at - 1]


# ---------------------------------------------------------------------------
# Editing


def _parse_statement(edit: dict, key: str = "statement") -> Formula:
    statement = edit.get(key)
    if isinstance(statement, Formula):
        return statement
    if not isinstance(statement, str):
        raise InvalidEditTarget(f"edit needs a {key!r} string")
    return parse(statement)


def _parse_rule(value) -> RuleId | None:
    if value is None or isinstance(value, RuleId):
        return value
    try:
        return RuleId(value)
    except ValueError:
        raise InvalidEditTarget(f"unknown rule {value!r}") from None


def _parse_refs(value) -> list[int]:
    if value is None:
        return []
    refs = [int(r) for r in value]
    if any(r < 1 for r in refs):
        raise InvalidEditTarget("references must be positive line numbers")
    return refs


class _Rec:
    __slots__ = ("old", "kind", "formula", "rule", "refs", "depth")

    def __init__(self, old, kind, formula, rule, refs, depth):
        self.old = old
        self.kind = kind
        self.formula = formula
        self.rule = rule
        self.refs = list(refs)
        self.depth = depth


def apply_edit(doc: ProofDocument, edit: dict) -> ProofDocument:
    """Apply one edit and return the renumbered document.

    References follow the lines they point at; references to a deleted
    line are dropped.  Edits that leave a reference pointing forward are
    accepted — the line simply stops checking until fixed.
    """
    if not isinstance(edit, dict) or "op" not in edit:
        raise InvalidEditTarget("an edit is a mapping with an 'op' field")
    op = edit["op"]
    recs = [
        _Rec(line.index, line.kind, line.formula, line.rule, line.refs, line.depth)
        for line in doc.lines
    ]
    goals = list(doc.goals)
    n = len(recs)

    def target(key: str = "line") -> int:
        try:
            at = int(edit[key])
        except (KeyError, TypeError, ValueError):
            raise InvalidEditTarget(f"edit needs a {key!r} line number") from None
        if not 1 <= at <= n:
            raise InvalidEditTarget(f"no line {at} in a {n}-line proof")
        return at

    def premise_count() -> int:
        count = 0
        for rec in recs:
            if rec.kind != PREMISE:
                break
            count += 1
        return count

    if op == "add_premise":
        formula = _parse_statement(edit)
        recs.insert(premise_count(), _Rec(None, PREMISE, formula, None, [], 0))
    elif op == "add_conclusion":
        formula = _parse_statement(edit)
        depth = recs[-1].depth if recs else 0
        recs.append(
            _Rec(
                None,
                CONCLUSION,
                formula,
                _parse_rule(edit.get("rule")),
                _parse_refs(edit.get("refs")),
                depth,
            )
        )
    elif op == "insert_line":
        try:
            at = int(edit["at"])
        except (KeyError, TypeError, ValueError):
            raise InvalidEditTarget("edit needs an 'at' position") from None
        if not 1 <= at <= n + 1:
            raise InvalidEditTarget(f"cannot insert at position {at} of {n} lines")
        kind = edit.get("kind", CONCLUSION)
        if kind not in KINDS:
            raise InvalidEditTarget(f"unknown line kind {kind!r}")
        formula = _parse_statement(edit)
        prev_depth = recs[at - 2].depth if at >= 2 else 0
        depth = edit.get("depth")
        if depth is None:
            depth = prev_depth + 1 if kind == ASSUMPTION else prev_depth
        depth = int(depth)
        if depth < 0 or (kind == ASSUMPTION and depth < 1):
            raise InvalidEditTarget(f"bad depth {depth} for a {kind} line")
        rule = _parse_rule(edit.get("rule")) if kind == CONCLUSION else None
        refs = _parse_refs(edit.get("refs")) if kind == CONCLUSION else []
        recs.insert(at - 1, _Rec(None, kind, formula, rule, refs, depth))
    elif op == "delete_line":
        recs.pop(target() - 1)
    elif op == "set_formula":
        recs[target() - 1].formula = _parse_statement(edit)
    elif op == "set_rule":
        rec = recs[target() - 1]
        if rec.kind != CONCLUSION:
            raise InvalidEditTarget(f"a {rec.kind} line carries no rule")
        rec.rule = _parse_rule(edit.get("rule"))
    elif op == "set_refs":
        rec = recs[target() - 1]
        if rec.kind != CONCLUSION:
            raise InvalidEditTarget(f"a {rec.kind} line carries no references")
        rec.refs = _parse_refs(edit.get("refs"))
    elif op == "toggle_kind":
        at = target()
        rec = recs[at - 1]
        if rec.depth != 0 or rec.kind == ASSUMPTION:
            raise InvalidEditTarget(
                "only top-level premises and conclusions can be toggled"
            )
        if rec.kind == PREMISE:
            rec.kind = CONCLUSION
            recs.pop(at - 1)
            recs.insert(premise_count(), rec)
        else:
            if rec.rule is not None or rec.refs:
                raise TogglePremiseAfterConclusion(
                    "this conclusion has a rule assigned; clear it before "
                    "turning the line into a premise"
                )
            rec.kind = PREMISE
            recs.pop(at - 1)
            recs.insert(premise_count(), rec)
    elif op == "begin_subproof":
        try:
            after = int(edit["after"])
        except (KeyError, TypeError, ValueError):
            raise InvalidEditTarget("edit needs an 'after' line number") from None
        if not 0 <= after <= n:
            raise InvalidEditTarget(f"no line {after} in a {n}-line proof")
        formula = _parse_statement(edit)
        depth = (recs[after - 1].depth if after else 0) + 1
        recs.insert(after, _Rec(None, ASSUMPTION, formula, None, [], depth))
    elif op == "end_subproof":
        try:
            after = int(edit["after"])
        except (KeyError, TypeError, ValueError):
            raise InvalidEditTarget("edit needs an 'after' line number") from None
        if not 1 <= after <= n:
            raise InvalidEditTarget(f"no line {after} in a {n}-line proof")
        depth = recs[after - 1].depth - 1
        if depth < 0:
            raise InvalidEditTarget("no sub-proof is open at that line")
        formula = _parse_statement(edit)
        recs.insert(
            after,
            _Rec(
                None,
                CONCLUSION,
                formula,
                _parse_rule(edit.get("rule")),
                _parse_refs(edit.get("refs")),
                depth,
            ),
        )
    elif op == "set_goals":
        statements = edit.get("statements")
        if not isinstance(statements, (list, tuple)):
            raise InvalidEditTarget("set_goals needs a list of statements")
        goals = [s if isinstance(s, Formula) else parse(s) for s in statements]
    else:
        raise InvalidEditTarget(f"unknown edit op {op!r}")

    mapping = {rec.old: new for new, rec in enumerate(recs, start=1) if rec.old}
    lines = []
    for new, rec in enumerate(recs, start=1):
        refs = []
        for r in rec.refs:
            if r in mapping:
                refs.append(mapping[r])
            elif r > n:
                refs.append(r)  # already dangling; keep, checking flags it
        lines.append(
            ProofLine(new, rec.kind, rec.formula, rec.rule, tuple(refs), rec.depth)
        )
    return ProofDocument(tuple(lines), tuple(goals), doc.metadata)
