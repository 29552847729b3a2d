"""Render formulas back to text in unicode, ascii, or latex style.

The unicode and ascii styles round-trip: parsing the output yields a
structurally equal formula.  Parentheses are emitted exactly where the
grammar needs them, so written grouping of ∧/∨ chains survives.
"""
from __future__ import annotations

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
)

STYLES = ("unicode", "ascii", "latex")

_SYMBOLS = {
    "unicode": {
        "not": "¬", "and": "∧", "or": "∨", "xor": "⊕", "implies": "→",
        "iff": "↔", "forall": "∀", "exists": "∃", "top": "⊤", "bottom": "⊥",
        "eq": "=",
    },
    "ascii": {
        "not": "~", "and": "&", "or": "|", "xor": "(+)", "implies": "->",
        "iff": "<->", "forall": "\\A", "exists": "\\E", "top": "\\top",
        "bottom": "\\bot", "eq": "=",
    },
    "latex": {
        "not": "\\neg", "and": "\\wedge", "or": "\\vee", "xor": "\\oplus",
        "implies": "\\to", "iff": "\\leftrightarrow", "forall": "\\forall",
        "exists": "\\exists", "top": "\\top", "bottom": "\\bot", "eq": "=",
    },
}

# Binding strength; parents parenthesize children that bind no tighter
# than the context requires.
_PREC_IFF = 1
_PREC_IMPLIES = 2
_PREC_XOR = 3
_PREC_OR = 4
_PREC_AND = 5
_PREC_UNARY = 6


def _prec(f: Formula) -> int:
    if isinstance(f, Iff):
        return _PREC_IFF
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    if isinstance(f, Xor):
        return _PREC_XOR
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    return _PREC_UNARY


def render_term(t: Term, style: str = "unicode") -> str:
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    if isinstance(t, (Variable, Constant)):
        return t.name
    if isinstance(t, FuncApp):
        return f"{t.symbol}({','.join(render_term(a, style) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def render(f: Formula, style: str = "unicode") -> str:
    """Render a formula; style is one of unicode, ascii, latex."""
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    sym = _SYMBOLS[style]

    def term(t: Term) -> str:
        return render_term(t, style)

    def wrap(child: Formula, minimum: int) -> str:
        text = go(child)
        if _prec(child) < minimum:
            return f"({text})"
        return text

    def nary(node: Formula, op_key: str, prec: int) -> str:
        parts = []
        for c in node.children:  # type: ignore[attr-defined]
            text = go(c)
            # A same-connective child must keep its parentheses, otherwise
            # the chain would silently flatten on re-parse.
            if _prec(c) <= prec:
                text = f"({text})"
            parts.append(text)
        return f" {sym[op_key]} ".join(parts)

    def quantifier(node, key: str) -> str:
        body = node.body
        if isinstance(body, (Forall, Exists)):
            return f"{sym[key]}{_var(node.var)}{go(body)}"
        return f"{sym[key]}{_var(node.var)} ({go(body)})"

    def _var(name: str) -> str:
        # ascii quantifier aliases are words, so keep a space before the
        # variable; the one-character unicode symbols read better without.
        if style == "unicode":
            return name
        return " " + name

    def go(g: Formula) -> str:
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, PredApp):
            return f"{g.symbol}({','.join(term(a) for a in g.args)})"
        if isinstance(g, Equals):
            return f"{term(g.lhs)} {sym['eq']} {term(g.rhs)}"
        if isinstance(g, Top):
            return sym["top"]
        if isinstance(g, Bottom):
            return sym["bottom"]
        if isinstance(g, Not):
            inner = wrap(g.child, _PREC_UNARY)
            if style == "latex":
                return f"{sym['not']} {inner}"
            return f"{sym['not']}{inner}"
        if isinstance(g, And):
            return nary(g, "and", _PREC_AND)
        if isinstance(g, Or):
            return nary(g, "or", _PREC_OR)
        if isinstance(g, Xor):
            left = wrap(g.lhs, _PREC_XOR)
            right = wrap(g.rhs, _PREC_XOR + 1)
            return f"{left} {sym['xor']} {right}"
        if isinstance(g, Implies):
            left = wrap(g.antecedent, _PREC_IMPLIES + 1)
            right = wrap(g.consequent, _PREC_IMPLIES)
            return f"{left} {sym['implies']} {right}"
        if isinstance(g, Iff):
            left = wrap(g.lhs, _PREC_IFF + 1)
            right = wrap(g.rhs, _PREC_IFF)
            return f"{left} {sym['iff']} {right}"
        if isinstance(g, Forall):
            return quantifier(g, "forall")
        if isinstance(g, Exists):
            return quantifier(g, "exists")
        raise TypeError(f"not a formula: {g!r}")

    return go(f)
