"""Terms and formulas: the statement language of the checker.

Terms are first-order terms (variables, constants, function applications).
Formulas cover propositional atoms, predicate applications, equality,
the constants true/false, the usual connectives (with n-ary conjunction
and disjunction that preserve the grouping written in the source), and
the two quantifiers.

Everything here is an immutable value; all operations are pure functions,
so formulas can be shared freely between threads.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# Role tags used by the symbol-signature bookkeeping.  Formula-position
# symbols (atoms, predicates) and term-position symbols (constants,
# functions) live in separate namespaces; arity must be consistent
# within each.
FORMULA_SYMBOL = "formula"
TERM_SYMBOL = "term"


def valid_identifier(name: str) -> bool:
    """True for a nonempty letter-led run of letters, digits, underscores."""
    return isinstance(name, str) and bool(_IDENT_RE.match(name))


def _check_identifier(name: str) -> None:
    if not valid_identifier(name):
        raise ValueError(f"invalid identifier {name!r}")


class CaptureError(ValueError):
    """A substitution would have captured a variable under a quantifier."""

    def __init__(self, variable: str, occurrence: int):
        super().__init__(
            f"substituting here would capture the bound variable "
            f"'{variable}' (occurrence {occurrence})"
        )
        self.variable = variable
        self.occurrence = occurrence


class ArityConflict(ValueError):
    """One symbol used with two different arities (or roles) in a document."""

    def __init__(self, symbol: str, role: str, old: int, new: int):
        def describe(n: int) -> str:
            if n == 0:
                return "without arguments"
            return f"with {n} argument{'s' if n != 1 else ''}"

        super().__init__(
            f"'{symbol}' is used {describe(new)} here but {describe(old)} earlier"
        )
        self.symbol = symbol
        self.role = role
        self.old = old
        self.new = new


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Variable(Term):
    name: str

    def __post_init__(self):
        _check_identifier(self.name)


@dataclass(frozen=True)
class Constant(Term):
    name: str

    def __post_init__(self):
        _check_identifier(self.name)


@dataclass(frozen=True)
class FuncApp(Term):
    symbol: str
    args: tuple[Term, ...]

    def __post_init__(self):
        _check_identifier(self.symbol)
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("function application needs at least one argument")
        for a in self.args:
            if not isinstance(a, Term):
                raise TypeError(f"function argument {a!r} is not a Term")


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        _check_identifier(self.name)


@dataclass(frozen=True)
class PredApp(Formula):
    symbol: str
    args: tuple[Term, ...]

    def __post_init__(self):
        _check_identifier(self.symbol)
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("predicate application needs at least one argument")
        for a in self.args:
            if not isinstance(a, Term):
                raise TypeError(f"predicate argument {a!r} is not a Term")


@dataclass(frozen=True)
class Equals(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


def _check_nary(children):
    children = tuple(children)
    if len(children) < 2:
        raise ValueError("n-ary connective needs at least two operands")
    for c in children:
        if not isinstance(c, Formula):
            raise TypeError(f"operand {c!r} is not a Formula")
    return children


@dataclass(frozen=True)
class And(Formula):
    # Children keep the grouping exactly as written: And(P, And(Q, R))
    # and And(P, Q, R) are different values related by one Association step.
    children: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", _check_nary(self.children))


@dataclass(frozen=True)
class Or(Formula):
    children: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", _check_nary(self.children))


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Xor(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_identifier(self.var)


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_identifier(self.var)


TOP = Top()
BOTTOM = Bottom()

QUANTIFIERS = (Forall, Exists)


def subformulas(f: Formula):
    """Direct children of a formula node, in source order."""
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, (And, Or)):
        return f.children
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    if isinstance(f, (Iff, Xor)):
        return (f.lhs, f.rhs)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def terms_of(f: Formula) -> tuple[Term, ...]:
    """Top-level terms sitting directly under a formula node."""
    if isinstance(f, PredApp):
        return f.args
    if isinstance(f, Equals):
        return (f.lhs, f.rhs)
    return ()


def rebuild(f: Formula, children: tuple[Formula, ...]) -> Formula:
    """Copy of f with its direct subformulas replaced, in order."""
    if isinstance(f, Not):
        return Not(children[0])
    if isinstance(f, And):
        return And(children)
    if isinstance(f, Or):
        return Or(children)
    if isinstance(f, Implies):
        return Implies(children[0], children[1])
    if isinstance(f, Iff):
        return Iff(children[0], children[1])
    if isinstance(f, Xor):
        return Xor(children[0], children[1])
    if isinstance(f, Forall):
        return Forall(f.var, children[0])
    if isinstance(f, Exists):
        return Exists(f.var, children[0])
    if children:
        raise ValueError(f"{type(f).__name__} has no subformulas")
    return f


# ---------------------------------------------------------------------------
# Variable / constant bookkeeping


def term_variables(t: Term) -> frozenset[str]:
    if isinstance(t, Variable):
        return frozenset((t.name,))
    if isinstance(t, FuncApp):
        out: frozenset[str] = frozenset()
        for a in t.args:
            out |= term_variables(a)
        return out
    return frozenset()


def term_constants(t: Term) -> frozenset[str]:
    if isinstance(t, Constant):
        return frozenset((t.name,))
    if isinstance(t, FuncApp):
        out: frozenset[str] = frozenset()
        for a in t.args:
            out |= term_constants(a)
        return out
    return frozenset()


def free_variables(f: Formula) -> frozenset[str]:
    """Names of term variables not bound by any enclosing quantifier."""
    out: set[str] = set()

    def walk(g: Formula, bound: frozenset[str]) -> None:
        for t in terms_of(g):
            out.update(term_variables(t) - bound)
        if isinstance(g, QUANTIFIERS):
            walk(g.body, bound | {g.var})
        else:
            for c in subformulas(g):
                walk(c, bound)

    walk(f, frozenset())
    return frozenset(out)


def constants(f: Formula) -> frozenset[str]:
    """Names of all constants occurring anywhere in the formula."""
    out: set[str] = set()

    def walk(g: Formula) -> None:
        for t in terms_of(g):
            out.update(term_constants(t))
        for c in subformulas(g):
            walk(c)

    walk(f)
    return frozenset(out)


def merge_signature(sig: dict[tuple[str, str], int], f: Formula) -> None:
    """Fold f's symbols into sig, raising ArityConflict on a mismatch.

    sig maps (role, symbol) to arity, where role separates formula-position
    symbols (atoms arity 0, predicates arity n) from term-position ones
    (constants arity 0, functions arity n).
    """

    def note(role: str, symbol: str, arity: int) -> None:
        key = (role, symbol)
        old = sig.get(key)
        if old is None:
            sig[key] = arity
        elif old != arity:
            raise ArityConflict(symbol, role, old, arity)

    def walk_term(t: Term) -> None:
        if isinstance(t, Constant):
            note(TERM_SYMBOL, t.name, 0)
        elif isinstance(t, FuncApp):
            note(TERM_SYMBOL, t.symbol, len(t.args))
            for a in t.args:
                walk_term(a)

    def walk(g: Formula) -> None:
        if isinstance(g, Atom):
            note(FORMULA_SYMBOL, g.name, 0)
        elif isinstance(g, PredApp):
            note(FORMULA_SYMBOL, g.symbol, len(g.args))
        for t in terms_of(g):
            walk_term(t)
        for c in subformulas(g):
            walk(c)

    walk(f)


# ---------------------------------------------------------------------------
# Substitution


def substitute(
    f: Formula,
    target: Term,
    replacement: Term,
    positions: set[int] | frozenset[int] | None = None,
) -> Formula:
    """Replace occurrences of one term by another.

    Occurrences are counted left to right, outermost first, starting at 0;
    ``positions`` selects a subset (None means all).  A spot where some
    variable of ``target`` is shadowed by a quantifier is not an occurrence
    at all.  If ``replacement`` carries a variable that is bound at a
    selected occurrence the substitution fails with CaptureError instead of
    renaming anything silently.
    """
    counter = [0]
    repl_vars = term_variables(replacement)
    tgt_vars = term_variables(target)

    def sub_term(t: Term, bound: frozenset[str]) -> Term:
        if t == target and not (tgt_vars & bound):
            idx = counter[0]
            counter[0] += 1
            if positions is None or idx in positions:
                captured = repl_vars & bound
                if captured:
                    raise CaptureError(sorted(captured)[0], idx)
                return replacement
            return t
        if isinstance(t, FuncApp):
            return FuncApp(t.symbol, tuple(sub_term(a, bound) for a in t.args))
        return t

    def sub_formula(g: Formula, bound: frozenset[str]) -> Formula:
        if isinstance(g, PredApp):
            return PredApp(g.symbol, tuple(sub_term(a, bound) for a in g.args))
        if isinstance(g, Equals):
            return Equals(sub_term(g.lhs, bound), sub_term(g.rhs, bound))
        if isinstance(g, QUANTIFIERS):
            body = sub_formula(g.body, bound | {g.var})
            return type(g)(g.var, body)
        kids = subformulas(g)
        if not kids:
            return g
        return rebuild(g, tuple(sub_formula(c, bound) for c in kids))

    return sub_formula(f, frozenset())


def count_occurrences(f: Formula, target: Term) -> int:
    """Number of substitutable occurrences of target in f."""
    tgt_vars = term_variables(target)
    count = 0

    def walk_term(t: Term, bound: frozenset[str]) -> None:
        nonlocal count
        if t == target and not (tgt_vars & bound):
            count += 1
            return
        if isinstance(t, FuncApp):
            for a in t.args:
                walk_term(a, bound)

    def walk(g: Formula, bound: frozenset[str]) -> None:
        for t in terms_of(g):
            walk_term(t, bound)
        if isinstance(g, QUANTIFIERS):
            walk(g.body, bound | {g.var})
        else:
            for c in subformulas(g):
                walk(c, bound)

    walk(f, frozenset())
    return count


# ---------------------------------------------------------------------------
# Alpha-equivalence


def alpha_equal(f: Formula, g: Formula) -> bool:
    """True iff f and g are identical up to renaming of bound variables."""

    def terms(t1: Term, t2: Term, env1: dict[str, int], env2: dict[str, int]) -> bool:
        if isinstance(t1, Variable) and isinstance(t2, Variable):
            d1 = env1.get(t1.name)
            d2 = env2.get(t2.name)
            if d1 is None and d2 is None:
                return t1.name == t2.name
            return d1 == d2
        if isinstance(t1, Constant) and isinstance(t2, Constant):
            return t1.name == t2.name
        if isinstance(t1, FuncApp) and isinstance(t2, FuncApp):
            return (
                t1.symbol == t2.symbol
                and len(t1.args) == len(t2.args)
                and all(terms(a, b, env1, env2) for a, b in zip(t1.args, t2.args))
            )
        return False

    def walk(a: Formula, b: Formula, env1: dict, env2: dict, depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Atom):
            return a.name == b.name
        if isinstance(a, PredApp):
            return (
                a.symbol == b.symbol
                and len(a.args) == len(b.args)
                and all(terms(s, t, env1, env2) for s, t in zip(a.args, b.args))
            )
        if isinstance(a, Equals):
            return terms(a.lhs, b.lhs, env1, env2) and terms(a.rhs, b.rhs, env1, env2)
        if isinstance(a, QUANTIFIERS):
            e1 = dict(env1)
            e2 = dict(env2)
            e1[a.var] = depth
            e2[b.var] = depth
            return walk(a.body, b.body, e1, e2, depth + 1)
        ka = subformulas(a)
        kb = subformulas(b)
        if len(ka) != len(kb):
            return False
        return all(walk(x, y, env1, env2, depth) for x, y in zip(ka, kb))

    return walk(f, g, {}, {}, 0)


def is_propositional(f: Formula) -> bool:
    """True when f uses only atoms, constants true/false and connectives."""
    if isinstance(f, (PredApp, Equals)) or isinstance(f, QUANTIFIERS):
        return False
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    return all(is_propositional(c) for c in subformulas(f))


def atom_names(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    out: frozenset[str] = frozenset()
    for c in subformulas(f):
        out |= atom_names(c)
    return out
