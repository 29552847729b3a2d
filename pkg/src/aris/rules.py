"""Rule verification: does a conclusion follow from its references?

Inference rules match whole statements.  Equivalence and Boolean rules are
bidirectional schemas applied at one or more disjoint subformula positions
of a single reference.  Predicate rules handle quantifiers, equality and
the freshness/arbitrariness side conditions.  Every failure is reported as
an invalid Verdict carrying a stable diagnostic code and a sentence that
names the offending part; verification itself never raises.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import permutations

from . import diagnostics as dg
from .diagnostics import Verdict, invalid, valid
from .formula import (
    And,
    Atom,
    Bottom,
    Constant,
    Equals,
    Exists,
    Forall,
    Formula,
    FuncApp,
    Iff,
    Implies,
    Not,
    Or,
    PredApp,
    Term,
    Top,
    Variable,
    Xor,
    alpha_equal,
    constants,
    free_variables,
    subformulas,
    term_variables,
)
from .render import render, render_term


class Family(str, Enum):
    INFERENCE = "inference"
    EQUIVALENCE = "equivalence"
    PREDICATE = "predicate"
    BOOLEAN = "boolean"
    STRUCTURAL = "structural"


class RuleId(str, Enum):
    # Inference
    MODUS_PONENS = "modus_ponens"
    ADDITION = "addition"
    SIMPLIFICATION = "simplification"
    CONJUNCTION = "conjunction"
    HYPOTHETICAL_SYLLOGISM = "hypothetical_syllogism"
    DISJUNCTIVE_SYLLOGISM = "disjunctive_syllogism"
    EXCLUDED_MIDDLE = "excluded_middle"
    CONSTRUCTIVE_DILEMMA = "constructive_dilemma"
    # Equivalence
    IMPLICATION = "implication"
    DEMORGAN = "demorgan"
    ASSOCIATION = "association"
    COMMUTATIVITY = "commutativity"
    IDEMPOTENCE = "idempotence"
    DISTRIBUTION = "distribution"
    EQUIVALENCE = "equivalence"
    DOUBLE_NEGATION = "double_negation"
    EXPORTATION = "exportation"
    SUBSUMPTION = "subsumption"
    CONTRAPOSITIVE = "contrapositive"
    # Predicate
    UNIVERSAL_GENERALIZATION = "universal_generalization"
    UNIVERSAL_INSTANTIATION = "universal_instantiation"
    EXISTENTIAL_GENERALIZATION = "existential_generalization"
    EXISTENTIAL_INSTANTIATION = "existential_instantiation"
    BOUND_VARIABLE = "bound_variable"
    NULL_QUANTIFIER = "null_quantifier"
    PRENEX = "prenex"
    IDENTITY = "identity"
    FREE_VARIABLE = "free_variable"
    # Boolean
    BOOLEAN_IDENTITY = "boolean_identity"
    BOOLEAN_NEGATION = "boolean_negation"
    BOOLEAN_DOMINANCE = "boolean_dominance"
    SYMBOL_NEGATION = "symbol_negation"
    # Structural
    PREMISE = "premise"
    ASSUMPTION = "assumption"
    SUBPROOF = "subproof"


_FAMILIES: dict[Family, tuple[RuleId, ...]] = {
    Family.INFERENCE: (
        RuleId.MODUS_PONENS, RuleId.ADDITION, RuleId.SIMPLIFICATION,
        RuleId.CONJUNCTION, RuleId.HYPOTHETICAL_SYLLOGISM,
        RuleId.DISJUNCTIVE_SYLLOGISM, RuleId.EXCLUDED_MIDDLE,
        RuleId.CONSTRUCTIVE_DILEMMA,
    ),
    Family.EQUIVALENCE: (
        RuleId.IMPLICATION, RuleId.DEMORGAN, RuleId.ASSOCIATION,
        RuleId.COMMUTATIVITY, RuleId.IDEMPOTENCE, RuleId.DISTRIBUTION,
        RuleId.EQUIVALENCE, RuleId.DOUBLE_NEGATION, RuleId.EXPORTATION,
        RuleId.SUBSUMPTION, RuleId.CONTRAPOSITIVE,
    ),
    Family.PREDICATE: (
        RuleId.UNIVERSAL_GENERALIZATION, RuleId.UNIVERSAL_INSTANTIATION,
        RuleId.EXISTENTIAL_GENERALIZATION, RuleId.EXISTENTIAL_INSTANTIATION,
        RuleId.BOUND_VARIABLE, RuleId.NULL_QUANTIFIER, RuleId.PRENEX,
        RuleId.IDENTITY, RuleId.FREE_VARIABLE,
    ),
    Family.BOOLEAN: (
        RuleId.BOOLEAN_IDENTITY, RuleId.BOOLEAN_NEGATION,
        RuleId.BOOLEAN_DOMINANCE, RuleId.SYMBOL_NEGATION,
    ),
    Family.STRUCTURAL: (RuleId.PREMISE, RuleId.ASSUMPTION, RuleId.SUBPROOF),
}

FAMILY: dict[RuleId, Family] = {
    rule: fam for fam, rules in _FAMILIES.items() for rule in rules
}

# Reference-count bounds per rule: (minimum, maximum or None for unbounded).
# Hypothetical Syllogism caps at 8 because the chain search is factorial.
REF_BOUNDS: dict[RuleId, tuple[int, int | None]] = {
    RuleId.MODUS_PONENS: (2, 2),
    RuleId.ADDITION: (1, 1),
    RuleId.SIMPLIFICATION: (1, 1),
    RuleId.CONJUNCTION: (2, None),
    RuleId.HYPOTHETICAL_SYLLOGISM: (2, 8),
    RuleId.DISJUNCTIVE_SYLLOGISM: (2, None),
    RuleId.EXCLUDED_MIDDLE: (0, 0),
    RuleId.CONSTRUCTIVE_DILEMMA: (3, None),
    RuleId.UNIVERSAL_GENERALIZATION: (1, 1),
    RuleId.UNIVERSAL_INSTANTIATION: (1, 1),
    RuleId.EXISTENTIAL_GENERALIZATION: (1, 1),
    RuleId.EXISTENTIAL_INSTANTIATION: (1, 1),
    RuleId.BOUND_VARIABLE: (1, 1),
    RuleId.NULL_QUANTIFIER: (1, 1),
    RuleId.PRENEX: (1, 1),
    RuleId.IDENTITY: (0, 0),
    RuleId.FREE_VARIABLE: (2, 2),
    RuleId.PREMISE: (0, 0),
    RuleId.ASSUMPTION: (0, 0),
    RuleId.SUBPROOF: (2, 2),
}
for _r in _FAMILIES[Family.EQUIVALENCE] + _FAMILIES[Family.BOOLEAN]:
    REF_BOUNDS[_r] = (1, 1)

_DISPLAY_SPECIAL = {RuleId.DEMORGAN: "DeMorgan"}


def display_name(rule: RuleId) -> str:
    special = _DISPLAY_SPECIAL.get(rule)
    if special:
        return special
    return rule.value.replace("_", " ").title()


@dataclass(frozen=True)
class RuleContext:
    """Snapshot of what a line may rely on, derived from the document.

    visible: formulas of all earlier lines the checked line can see, in
    order (used for freshness).  fixed_constants: constants occurring in
    premises or open assumptions (an arbitrariness bar for Universal
    Generalization).  ei_witnesses: constants introduced as Existential
    Instantiation witnesses on visible lines, which can never be
    generalized.
    """

    visible: tuple[Formula, ...] = ()
    fixed_constants: frozenset[str] = frozenset()
    ei_witnesses: frozenset[str] = frozenset()

    @cached_property
    def used_constants(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for f in self.visible:
            out |= constants(f)
        return out


EMPTY_CONTEXT = RuleContext()


def _u(f: Formula) -> str:
    return f"'{render(f)}'"


# ---------------------------------------------------------------------------
# Entry point


def verify(
    rule: RuleId,
    conclusion: Formula,
    refs: tuple[Formula, ...] | list[Formula],
    ctx: RuleContext = EMPTY_CONTEXT,
) -> Verdict:
    """Check one rule application; all failures come back as Verdicts."""
    refs = tuple(refs)
    lo, hi = REF_BOUNDS[rule]
    if len(refs) < lo or (hi is not None and len(refs) > hi):
        if lo == hi:
            want = f"exactly {lo}"
        elif hi is None:
            want = f"at least {lo}"
        else:
            want = f"between {lo} and {hi}"
        return invalid(
            dg.WRONG_REF_COUNT,
            f"{display_name(rule)} takes {want} reference"
            f"{'s' if (hi is None or hi != 1) else ''}; {len(refs)} given",
        )
    family = FAMILY[rule]
    if family is Family.INFERENCE:
        return check_inference(rule, conclusion, refs)
    if family in (Family.EQUIVALENCE, Family.BOOLEAN):
        return check_rewrite(rule, refs[0], conclusion)
    if family is Family.PREDICATE:
        return check_predicate(rule, conclusion, refs, ctx)
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"{display_name(rule)} is a structural rule checked against the "
        "document, not an inference over referenced statements",
    )


# ---------------------------------------------------------------------------
# Inference rules (whole-statement patterns)


def check_inference(rule: RuleId, conclusion: Formula, refs: tuple[Formula, ...]) -> Verdict:
    return _INFERENCE[rule](conclusion, refs)


def _modus_ponens(conclusion, refs):
    for major, minor in ((refs[0], refs[1]), (refs[1], refs[0])):
        if isinstance(major, Implies) and major.antecedent == minor:
            if major.consequent == conclusion:
                return valid()
    for major, minor in ((refs[0], refs[1]), (refs[1], refs[0])):
        if isinstance(major, Implies):
            if major.antecedent != minor:
                return invalid(
                    dg.NO_MATCHING_PATTERN,
                    f"Modus Ponens needs the antecedent {_u(major.antecedent)} "
                    f"of {_u(major)} as the other reference, not {_u(minor)}",
                )
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the conclusion {_u(conclusion)} is not the consequent "
                f"{_u(major.consequent)} of {_u(major)}",
            )
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"Modus Ponens needs an implication among the references; got "
        f"{_u(refs[0])} and {_u(refs[1])}",
    )


def _addition(conclusion, refs):
    ref = refs[0]
    if not isinstance(conclusion, Or):
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the conclusion {_u(conclusion)} must be a disjunction",
        )
    if ref not in conclusion.children:
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the referenced statement {_u(ref)} is not one of the disjuncts "
            f"of {_u(conclusion)}",
        )
    return valid()


def _simplification(conclusion, refs):
    ref = refs[0]
    if not isinstance(ref, And):
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the reference {_u(ref)} is not a conjunction",
        )
    if conclusion in ref.children:
        return valid()
    if isinstance(conclusion, And):
        missing = Counter(conclusion.children) - Counter(ref.children)
        if not missing:
            return valid()
        extra = next(iter(missing))
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"{_u(extra)} is not among the conjuncts of {_u(ref)}",
        )
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"the conclusion {_u(conclusion)} is not a conjunct of {_u(ref)}",
    )


def _conjunction(conclusion, refs):
    if not isinstance(conclusion, And):
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the conclusion {_u(conclusion)} must be a conjunction",
        )
    want = Counter(refs)
    got = Counter(conclusion.children)
    if want == got:
        return valid()
    diff = (got - want) + (want - got)
    culprit = next(iter(diff))
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"the conjuncts of {_u(conclusion)} do not match the referenced "
        f"statements (mismatch at {_u(culprit)})",
    )


def _hypothetical_syllogism(conclusion, refs):
    bad = next((r for r in refs if not isinstance(r, Implies)), None)
    if bad is not None:
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"every reference must be an implication; {_u(bad)} is not",
        )
    if not isinstance(conclusion, Implies):
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the conclusion {_u(conclusion)} must be an implication",
        )
    for order in permutations(refs):
        if order[0].antecedent != conclusion.antecedent:
            continue
        if order[-1].consequent != conclusion.consequent:
            continue
        if all(
            order[i].consequent == order[i + 1].antecedent
            for i in range(len(order) - 1)
        ):
            return valid()
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"the references do not chain from {_u(conclusion.antecedent)} "
        f"to {_u(conclusion.consequent)} in any order",
    )


def _disjunctive_syllogism(conclusion, refs):
    candidates = [i for i, r in enumerate(refs) if isinstance(r, Or)]
    if not candidates:
        return invalid(
            dg.NO_MATCHING_PATTERN,
            "one reference must be a disjunction",
        )
    for i in candidates:
        disjunction = refs[i]
        others = refs[:i] + refs[i + 1 :]
        if not all(isinstance(o, Not) for o in others):
            continue
        removals = Counter(o.child for o in others)
        if removals - Counter(disjunction.children):
            continue  # some negation does not hit a distinct disjunct
        remaining = []
        for child in disjunction.children:
            if removals[child] > 0:
                removals[child] -= 1
            else:
                remaining.append(child)
        if not remaining:
            continue
        expected = remaining[0] if len(remaining) == 1 else Or(tuple(remaining))
        if conclusion == expected:
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"after removing the negated disjuncts from {_u(disjunction)} "
            f"the remainder is {_u(expected)}, not {_u(conclusion)}",
        )
    return invalid(
        dg.NO_MATCHING_PATTERN,
        "the references must be one disjunction plus negations of distinct "
        "disjuncts",
    )


def _excluded_middle(conclusion, refs):
    if (
        isinstance(conclusion, Or)
        and len(conclusion.children) == 2
        and conclusion.children[1] == Not(conclusion.children[0])
    ):
        return valid()
    return invalid(
        dg.NO_MATCHING_PATTERN,
        f"the conclusion {_u(conclusion)} does not have the shape "
        "'F ∨ ¬F'",
    )


def _constructive_dilemma(conclusion, refs):
    if not isinstance(conclusion, Or):
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the conclusion {_u(conclusion)} must be a disjunction",
        )
    for i, r in enumerate(refs):
        if not isinstance(r, Or):
            continue
        others = refs[:i] + refs[i + 1 :]
        if len(r.children) != len(others):
            continue
        if not all(isinstance(o, Implies) for o in others):
            continue
        if Counter(r.children) != Counter(o.antecedent for o in others):
            continue
        if Counter(conclusion.children) == Counter(o.consequent for o in others):
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the conclusion {_u(conclusion)} does not collect the "
            "consequents of the referenced implications",
        )
    return invalid(
        dg.NO_MATCHING_PATTERN,
        "the references must be one disjunction plus one implication per "
        "disjunct, antecedents matching the disjuncts",
    )


_INFERENCE = {
    RuleId.MODUS_PONENS: _modus_ponens,
    RuleId.ADDITION: _addition,
    RuleId.SIMPLIFICATION: _simplification,
    RuleId.CONJUNCTION: _conjunction,
    RuleId.HYPOTHETICAL_SYLLOGISM: _hypothetical_syllogism,
    RuleId.DISJUNCTIVE_SYLLOGISM: _disjunctive_syllogism,
    RuleId.EXCLUDED_MIDDLE: _excluded_middle,
    RuleId.CONSTRUCTIVE_DILEMMA: _constructive_dilemma,
}


# ---------------------------------------------------------------------------
# Equivalence / Boolean schemas (primitive steps at one position)


def _flatten(f: Formula, cls) -> tuple[Formula, ...]:
    out: list[Formula] = []
    for c in f.children:
        if isinstance(c, cls):
            out.extend(_flatten(c, cls))
        else:
            out.append(c)
    return tuple(out)


def _d_implication(f, g):
    return (
        isinstance(f, Implies)
        and isinstance(g, Or)
        and g.children == (Not(f.antecedent), f.consequent)
    )


def _d_demorgan(f, g):
    if not isinstance(f, Not):
        return False
    inner = f.child
    if isinstance(inner, And):
        return isinstance(g, Or) and g.children == tuple(Not(c) for c in inner.children)
    if isinstance(inner, Or):
        return isinstance(g, And) and g.children == tuple(Not(c) for c in inner.children)
    return False


def _d_association(f, g):
    for cls in (And, Or):
        if isinstance(f, cls) and isinstance(g, cls):
            return f != g and _flatten(f, cls) == _flatten(g, cls)
    return False


def _d_commutativity(f, g):
    for cls in (And, Or):
        if isinstance(f, cls) and isinstance(g, cls):
            return f != g and Counter(f.children) == Counter(g.children)
    return False


def _dedup(children: tuple[Formula, ...]) -> tuple[Formula, ...]:
    seen: list[Formula] = []
    for c in children:
        if c not in seen:
            seen.append(c)
    return tuple(seen)


def _d_idempotence(f, g):
    for cls in (And, Or):
        if isinstance(f, cls):
            # g counts both as a single collapsed operand and, when it is
            # the same connective, as the collapsed operand list
            options = [(g,)]
            if isinstance(g, cls):
                options.append(g.children)
            dedup = _dedup(f.children)
            for small in options:
                if len(small) < len(f.children) and dedup == small:
                    return True
    return False


def _d_distribution(f, g):
    for outer, inner in ((And, Or), (Or, And)):
        if not (isinstance(f, outer) and len(f.children) == 2):
            continue
        a, b = f.children
        if isinstance(b, inner):
            if g == inner(tuple(outer((a, c)) for c in b.children)):
                return True
        if isinstance(a, inner):
            if g == inner(tuple(outer((c, b)) for c in a.children)):
                return True
    return False


def _d_equivalence(f, g):
    return (
        isinstance(f, Iff)
        and isinstance(g, And)
        and g.children == (Implies(f.lhs, f.rhs), Implies(f.rhs, f.lhs))
    )


def _d_double_negation(f, g):
    return isinstance(f, Not) and isinstance(f.child, Not) and f.child.child == g


def _d_exportation(f, g):
    return (
        isinstance(f, Implies)
        and isinstance(f.antecedent, And)
        and len(f.antecedent.children) == 2
        and g
        == Implies(
            f.antecedent.children[0],
            Implies(f.antecedent.children[1], f.consequent),
        )
    )


def _d_subsumption(f, g):
    for outer, inner in ((And, Or), (Or, And)):
        if isinstance(f, outer) and len(f.children) == 2:
            a, b = f.children
            if isinstance(b, inner) and a in b.children and g == a:
                return True
            if isinstance(a, inner) and b in a.children and g == b:
                return True
    return False


def _d_contrapositive(f, g):
    return isinstance(f, Implies) and g == Implies(Not(f.consequent), Not(f.antecedent))


def _strips_units(children: tuple[Formula, ...], unit: Formula, target: tuple[Formula, ...]) -> bool:
    """True iff deleting >= 1 unit elements from children yields target."""
    i = 0
    deleted = 0
    for c in children:
        if i < len(target) and c == target[i]:
            i += 1
        elif c == unit:
            deleted += 1
        else:
            return False
    return i == len(target) and deleted >= 1


def _d_boolean_identity(f, g):
    for cls, unit in ((And, Top()), (Or, Bottom())):
        if isinstance(f, cls):
            options = [(g,)]
            if isinstance(g, cls):
                options.append(g.children)
            if any(_strips_units(f.children, unit, t) for t in options):
                return True
    return False


def _d_boolean_negation(f, g):
    for cls, result in ((And, Bottom()), (Or, Top())):
        if isinstance(f, cls) and len(f.children) == 2 and g == result:
            a, b = f.children
            if b == Not(a) or a == Not(b):
                return True
    return False


def _d_boolean_dominance(f, g):
    for cls, zero in ((And, Bottom()), (Or, Top())):
        if isinstance(f, cls) and zero in f.children and g == zero:
            return True
    return False


def _d_symbol_negation(f, g):
    return (f == Not(Top()) and g == Bottom()) or (f == Not(Bottom()) and g == Top())


_STEPS = {
    RuleId.IMPLICATION: _d_implication,
    RuleId.DEMORGAN: _d_demorgan,
    RuleId.ASSOCIATION: _d_association,
    RuleId.COMMUTATIVITY: _d_commutativity,
    RuleId.IDEMPOTENCE: _d_idempotence,
    RuleId.DISTRIBUTION: _d_distribution,
    RuleId.EQUIVALENCE: _d_equivalence,
    RuleId.DOUBLE_NEGATION: _d_double_negation,
    RuleId.EXPORTATION: _d_exportation,
    RuleId.SUBSUMPTION: _d_subsumption,
    RuleId.CONTRAPOSITIVE: _d_contrapositive,
    RuleId.BOOLEAN_IDENTITY: _d_boolean_identity,
    RuleId.BOOLEAN_NEGATION: _d_boolean_negation,
    RuleId.BOOLEAN_DOMINANCE: _d_boolean_dominance,
    RuleId.SYMBOL_NEGATION: _d_symbol_negation,
}


def check_equivalence_step(rule: RuleId, before: Formula, after: Formula) -> bool:
    """True iff (before, after) instantiates the rule's schema either way."""
    step = _STEPS.get(rule)
    if step is None:
        raise ValueError(f"{rule.value} is not an equivalence or boolean rule")
    return step(before, after) or step(after, before)


# ---------------------------------------------------------------------------
# Rewrite engine: apply a step at >= 1 disjoint positions


class _RewriteFail(Exception):
    def __init__(self, path: tuple[int, ...], before: Formula, after: Formula):
        self.path = path
        self.before = before
        self.after = after


def _count_steps(f: Formula, g: Formula, step, path: tuple[int, ...]) -> int:
    if f == g:
        return 0
    if step(f, g) or step(g, f):
        return 1
    if type(f) is type(g):
        if isinstance(f, (And, Or)) and len(f.children) == len(g.children):
            return sum(
                _count_steps(a, b, step, path + (i,))
                for i, (a, b) in enumerate(zip(f.children, g.children))
            )
        if isinstance(f, Not):
            return _count_steps(f.child, g.child, step, path + (0,))
        if isinstance(f, Implies):
            return _count_steps(
                f.antecedent, g.antecedent, step, path + (0,)
            ) + _count_steps(f.consequent, g.consequent, step, path + (1,))
        if isinstance(f, (Iff, Xor)):
            return _count_steps(f.lhs, g.lhs, step, path + (0,)) + _count_steps(
                f.rhs, g.rhs, step, path + (1,)
            )
        if isinstance(f, (Forall, Exists)) and f.var == g.var:
            return _count_steps(f.body, g.body, step, path + (0,))
    raise _RewriteFail(path, f, g)


def _run_rewrite(name: str, premise: Formula, conclusion: Formula, step) -> Verdict:
    try:
        n = _count_steps(premise, conclusion, step, ())
    except _RewriteFail as fail:
        where = (
            " at the start" if not fail.path
            else f" at position {'.'.join(str(p + 1) for p in fail.path)}"
        )
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"no {name} step relates {_u(fail.before)} to {_u(fail.after)}"
            f"{where}",
            position=fail.path,
        )
    if n == 0:
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the statement is unchanged; {name} must rewrite at least one "
            "position",
        )
    return valid()


def check_rewrite(rule: RuleId, premise: Formula, conclusion: Formula) -> Verdict:
    """Equivalence/Boolean rule applied at disjoint subformula positions."""

    def step(a: Formula, b: Formula) -> bool:
        return _STEPS[rule](a, b)

    return _run_rewrite(display_name(rule), premise, conclusion, step)


# ---------------------------------------------------------------------------
# Predicate rules


class _Capture(Exception):
    def __init__(self, variable: str):
        self.variable = variable


def _match_instantiation(
    body: Formula, var: str, instance: Formula
) -> tuple[bool, Term | None]:
    """Match instance = body[var -> t] for a single consistent term t.

    Every free occurrence of the variable in body must map to the same t;
    everything else must be structurally identical.  Returns (True, t), or
    (True, None) when body has no free occurrence (so instance == body).
    Raises _Capture when the only way to match would capture a variable of
    t under a quantifier.
    """
    found: list[Term] = []

    def terms(bt: Term, it: Term, bound: frozenset[str]) -> bool:
        if isinstance(bt, Variable) and bt.name == var and var not in bound:
            captured = term_variables(it) & bound
            if captured:
                raise _Capture(sorted(captured)[0])
            if found:
                return found[0] == it
            found.append(it)
            return True
        if isinstance(bt, Variable) and isinstance(it, Variable):
            return bt.name == it.name
        if isinstance(bt, Constant) and isinstance(it, Constant):
            return bt.name == it.name
        if isinstance(bt, FuncApp) and isinstance(it, FuncApp):
            return (
                bt.symbol == it.symbol
                and len(bt.args) == len(it.args)
                and all(terms(a, b, bound) for a, b in zip(bt.args, it.args))
            )
        return False

    def walk(b: Formula, i: Formula, bound: frozenset[str]) -> bool:
        if type(b) is not type(i):
            return False
        if isinstance(b, Atom):
            return b.name == i.name
        if isinstance(b, PredApp):
            return (
                b.symbol == i.symbol
                and len(b.args) == len(i.args)
                and all(terms(s, t, bound) for s, t in zip(b.args, i.args))
            )
        if isinstance(b, Equals):
            return terms(b.lhs, i.lhs, bound) and terms(b.rhs, i.rhs, bound)
        if isinstance(b, (Forall, Exists)):
            if b.var != i.var:
                return False
            return walk(b.body, i.body, bound | {b.var})
        kb = subformulas(b)
        ki = subformulas(i)
        if len(kb) != len(ki):
            return False
        return all(walk(x, y, bound) for x, y in zip(kb, ki))

    ok = walk(body, instance, frozenset())
    return ok, (found[0] if ok and found else None)


def _equation_rewrites(
    before: Formula, after: Formula, lhs: Term, rhs: Term
) -> bool:
    """True iff after is before with some occurrences of lhs replaced by rhs."""
    lhs_vars = term_variables(lhs)
    rhs_vars = term_variables(rhs)

    def terms(u: Term, v: Term, bound: frozenset[str]) -> bool:
        if u == v:
            return True
        if u == lhs and v == rhs and not (lhs_vars & bound) and not (rhs_vars & bound):
            return True
        if (
            isinstance(u, FuncApp)
            and isinstance(v, FuncApp)
            and u.symbol == v.symbol
            and len(u.args) == len(v.args)
        ):
            return all(terms(a, b, bound) for a, b in zip(u.args, v.args))
        return False

    def walk(f: Formula, g: Formula, bound: frozenset[str]) -> bool:
        if type(f) is not type(g):
            return False
        if isinstance(f, Atom):
            return f.name == g.name
        if isinstance(f, PredApp):
            return (
                f.symbol == g.symbol
                and len(f.args) == len(g.args)
                and all(terms(a, b, bound) for a, b in zip(f.args, g.args))
            )
        if isinstance(f, Equals):
            return terms(f.lhs, g.lhs, bound) and terms(f.rhs, g.rhs, bound)
        if isinstance(f, (Forall, Exists)):
            if f.var != g.var:
                return False
            return walk(f.body, g.body, bound | {f.var})
        kf = subformulas(f)
        kg = subformulas(g)
        if len(kf) != len(kg):
            return False
        return all(walk(a, b, bound) for a, b in zip(kf, kg))

    return walk(before, after, frozenset())


def _step_null_quantifier(f: Formula, g: Formula) -> bool:
    if isinstance(f, (Forall, Exists)) and f.var not in free_variables(f.body):
        return f.body == g
    return False


def _step_prenex(f: Formula, g: Formula) -> bool:
    if not isinstance(f, (Forall, Exists)):
        return False
    inner = f.body
    if not isinstance(inner, (And, Or)):
        return False
    if type(g) is not type(inner) or len(g.children) != len(inner.children):
        return False
    quant = type(f)
    diffs = [
        i for i, (a, b) in enumerate(zip(inner.children, g.children)) if a != b
    ]
    if len(diffs) != 1:
        return False
    i = diffs[0]
    if g.children[i] != quant(f.var, inner.children[i]):
        return False
    return all(
        f.var not in free_variables(c)
        for j, c in enumerate(inner.children)
        if j != i
    )


def check_predicate(
    rule: RuleId,
    conclusion: Formula,
    refs: tuple[Formula, ...],
    ctx: RuleContext,
) -> Verdict:
    if rule is RuleId.IDENTITY:
        if isinstance(conclusion, Equals) and conclusion.lhs == conclusion.rhs:
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"Identity concludes 't = t'; both sides of {_u(conclusion)} "
            "must be the same term",
        )

    if rule is RuleId.BOUND_VARIABLE:
        ref = refs[0]
        if ref == conclusion:
            return invalid(
                dg.NO_MATCHING_PATTERN,
                "no bound variable was renamed; the statement is unchanged",
            )
        if alpha_equal(ref, conclusion):
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"{_u(conclusion)} is not {_u(ref)} with bound variables renamed",
        )

    if rule is RuleId.NULL_QUANTIFIER:
        return _run_rewrite("Null Quantifier", refs[0], conclusion, _step_null_quantifier)

    if rule is RuleId.PRENEX:
        return _run_rewrite("Prenex", refs[0], conclusion, _step_prenex)

    if rule is RuleId.FREE_VARIABLE:
        equation = refs[0]
        if not isinstance(equation, Equals):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the first reference {_u(equation)} must be an equality",
            )
        if _equation_rewrites(refs[1], conclusion, equation.lhs, equation.rhs):
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"{_u(conclusion)} is not {_u(refs[1])} with occurrences of "
            f"'{render(Equals(equation.lhs, equation.rhs))}'"
            "'s left side replaced by its right side",
        )

    if rule is RuleId.UNIVERSAL_INSTANTIATION:
        ref = refs[0]
        if not isinstance(ref, Forall):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the reference {_u(ref)} must be universally quantified",
            )
        try:
            ok, _term = _match_instantiation(ref.body, ref.var, conclusion)
        except _Capture as cap:
            return invalid(
                dg.CAPTURE_ERROR,
                f"instantiating '{ref.var}' here would capture the variable "
                f"'{cap.variable}' under a quantifier",
            )
        if ok:
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"{_u(conclusion)} is not an instance of {_u(ref)}",
        )

    if rule is RuleId.EXISTENTIAL_GENERALIZATION:
        if not isinstance(conclusion, Exists):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the conclusion {_u(conclusion)} must be existentially "
                "quantified",
            )
        try:
            ok, _term = _match_instantiation(
                conclusion.body, conclusion.var, refs[0]
            )
        except _Capture as cap:
            return invalid(
                dg.CAPTURE_ERROR,
                f"generalizing to '{conclusion.var}' here would capture the "
                f"variable '{cap.variable}' under a quantifier",
            )
        if ok:
            return valid()
        return invalid(
            dg.NO_MATCHING_PATTERN,
            f"the reference {_u(refs[0])} is not {_u(conclusion)} with "
            f"'{conclusion.var}' replaced by one term",
        )

    if rule is RuleId.UNIVERSAL_GENERALIZATION:
        ref = refs[0]
        if not isinstance(conclusion, Forall):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the conclusion {_u(conclusion)} must be universally "
                "quantified",
            )
        try:
            ok, term = _match_instantiation(conclusion.body, conclusion.var, ref)
        except _Capture as cap:
            return invalid(
                dg.CAPTURE_ERROR,
                f"generalizing to '{conclusion.var}' here would capture the "
                f"variable '{cap.variable}' under a quantifier",
            )
        if not ok:
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the reference {_u(ref)} does not match {_u(conclusion)} "
                f"with one constant in place of '{conclusion.var}'",
            )
        if term is None:
            return valid()  # vacuous generalization: variable unused
        if not isinstance(term, Constant):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"only a constant can be generalized; "
                f"'{render_term(term)}' is not one",
            )
        if term.name in constants(conclusion.body):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the constant '{term.name}' still occurs in the conclusion; "
                "Universal Generalization must replace every occurrence",
            )
        if term.name in ctx.fixed_constants:
            return invalid(
                dg.ARBITRARY_CONSTANT_VIOLATION,
                f"the constant '{term.name}' occurs in a premise or open "
                "assumption, so it is not arbitrary",
            )
        if term.name in ctx.ei_witnesses:
            return invalid(
                dg.ARBITRARY_CONSTANT_VIOLATION,
                f"the constant '{term.name}' was introduced by Existential "
                "Instantiation and cannot be generalized",
            )
        return valid()

    if rule is RuleId.EXISTENTIAL_INSTANTIATION:
        ref = refs[0]
        if not isinstance(ref, Exists):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the reference {_u(ref)} must be existentially quantified",
            )
        try:
            ok, term = _match_instantiation(ref.body, ref.var, conclusion)
        except _Capture as cap:
            return invalid(
                dg.CAPTURE_ERROR,
                f"instantiating '{ref.var}' here would capture the variable "
                f"'{cap.variable}' under a quantifier",
            )
        if not ok:
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"{_u(conclusion)} is not an instance of {_u(ref)}",
            )
        if term is None:
            return valid()  # variable unused; no witness introduced
        if not isinstance(term, Constant):
            return invalid(
                dg.NO_MATCHING_PATTERN,
                f"the witness must be a constant; "
                f"'{render_term(term)}' is not one",
            )
        if term.name in ctx.used_constants:
            return invalid(
                dg.FRESHNESS_VIOLATION,
                f"the witness constant '{term.name}' already occurs on an "
                "earlier visible line, so it is not fresh",
            )
        return valid()

    raise ValueError(f"{rule.value} is not a predicate rule")
