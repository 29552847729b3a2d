"""Brute-force truth-table semantics for the propositional fragment.

This is the independent oracle the test suite uses to certify rule
soundness: ``entails`` and ``equivalent`` enumerate every assignment
exhaustively (up to 20 atoms), with no shortcuts shared with the rule
checker.

The enumeration runs on a truth-column kernel selected at import time:
the compiled extension ``aris._ttable`` when it built, otherwise the
pure-Python ``aris._ttable_py``.  Set ARIS_PURE_PYTHON=1 to force the
fallback; ``aris.semantics.BACKEND`` names the active one.
"""
from __future__ import annotations

import os
from typing import Iterable, Mapping

from . import _ttable_py
from .formula import (
    And,
    Atom,
    Bottom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    Xor,
    atom_names,
    is_propositional,
)

MAX_ATOMS = 20

if os.environ.get("ARIS_PURE_PYTHON", "") not in ("", "0"):
    _kernel = _ttable_py
else:
    try:
        from . import _ttable as _kernel  # type: ignore[attr-defined]
    except ImportError:
        _kernel = _ttable_py

BACKEND = _kernel.BACKEND


class NotPropositional(ValueError):
    """The formula contains predicates, equality, or quantifiers."""


class UnboundAtom(ValueError):
    def __init__(self, name: str):
        super().__init__(f"atom '{name}' has no value in the assignment")
        self.name = name


class TooManyAtoms(ValueError):
    def __init__(self, count: int):
        super().__init__(
            f"{count} distinct atoms exceed the enumeration bound of {MAX_ATOMS}"
        )
        self.count = count


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth value of a propositional formula under one assignment."""
    if isinstance(f, Atom):
        if f.name not in assignment:
            raise UnboundAtom(f.name)
        return bool(assignment[f.name])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not evaluate(f.child, assignment)
    if isinstance(f, And):
        return all(evaluate(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate(c, assignment) for c in f.children)
    if isinstance(f, Implies):
        return (not evaluate(f.antecedent, assignment)) or evaluate(
            f.consequent, assignment
        )
    if isinstance(f, Iff):
        return evaluate(f.lhs, assignment) == evaluate(f.rhs, assignment)
    if isinstance(f, Xor):
        return evaluate(f.lhs, assignment) != evaluate(f.rhs, assignment)
    raise NotPropositional(
        f"{type(f).__name__} is not propositional; the truth-table oracle "
        "covers atoms and connectives only"
    )


def compile_program(f: Formula, atom_index: Mapping[str, int]) -> tuple[list[int], list[int]]:
    """Postfix opcode/argument program for the truth-column kernels."""
    ops: list[int] = []
    args: list[int] = []

    def emit(op: int, a: int = 0) -> None:
        ops.append(op)
        args.append(a)

    def walk(g: Formula) -> None:
        if isinstance(g, Atom):
            emit(_ttable_py.OP_ATOM, atom_index[g.name])
        elif isinstance(g, Top):
            emit(_ttable_py.OP_TOP)
        elif isinstance(g, Bottom):
            emit(_ttable_py.OP_BOTTOM)
        elif isinstance(g, Not):
            walk(g.child)
            emit(_ttable_py.OP_NOT)
        elif isinstance(g, And):
            for c in g.children:
                walk(c)
            emit(_ttable_py.OP_AND, len(g.children))
        elif isinstance(g, Or):
            for c in g.children:
                walk(c)
            emit(_ttable_py.OP_OR, len(g.children))
        elif isinstance(g, Xor):
            walk(g.lhs)
            walk(g.rhs)
            emit(_ttable_py.OP_XOR)
        elif isinstance(g, Implies):
            walk(g.antecedent)
            walk(g.consequent)
            emit(_ttable_py.OP_IMPLIES)
        elif isinstance(g, Iff):
            walk(g.lhs)
            walk(g.rhs)
            emit(_ttable_py.OP_IFF)
        else:
            raise NotPropositional(
                f"{type(g).__name__} is not propositional; the truth-table "
                "oracle covers atoms and connectives only"
            )

    walk(f)
    return ops, args


def _atom_index(formulas: Iterable[Formula]) -> dict[str, int]:
    names: set[str] = set()
    for f in formulas:
        if not is_propositional(f):
            raise NotPropositional(
                "the truth-table oracle covers atoms and connectives only"
            )
        names.update(atom_names(f))
    if len(names) > MAX_ATOMS:
        raise TooManyAtoms(len(names))
    return {name: i for i, name in enumerate(sorted(names))}


# Above this alphabet size the pure kernel's whole-column big-int ops beat
# the compiled per-word sweep; see benchmarks/bench_truthtable.py.
_CROSSOVER_ATOMS = 13


def truth_column(f: Formula, atom_index: Mapping[str, int]) -> int:
    ops, args = compile_program(f, atom_index)
    n = len(atom_index)
    if n >= _CROSSOVER_ATOMS:
        return _ttable_py.truth_column(ops, args, n)
    return _kernel.truth_column(ops, args, n)


def entails(premises: list[Formula], conclusion: Formula) -> bool:
    """True iff every assignment satisfying all premises satisfies the
    conclusion, by exhaustive enumeration."""
    index = _atom_index(list(premises) + [conclusion])
    n = len(index)
    mask = (1 << (1 << n)) - 1
    sat = mask
    for p in premises:
        sat &= truth_column(p, index)
        if sat == 0:
            return True
    return sat & (mask ^ truth_column(conclusion, index)) == 0


def equivalent(f: Formula, g: Formula) -> bool:
    """True iff f and g agree under every assignment over their atoms."""
    index = _atom_index([f, g])
    return truth_column(f, index) == truth_column(g, index)


def tautology(f: Formula) -> bool:
    return entails([], f)
