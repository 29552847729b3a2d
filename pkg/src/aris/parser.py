"""Statement parser: text -> Formula.

Accepted symbols (unicode and ASCII aliases):

    not  ¬  ~        and  ∧  &        or  ∨  |
    xor  ⊕  (+)      implies  →  ->   iff  ↔  <->
    forall  ∀  \\A    exists  ∃  \\E
    true  ⊤  \\top    false  ⊥  \\bot
    equality =, parentheses, comma for argument lists

Precedence, tightest first: ¬, ∧, ∨, ⊕, →, ↔.  Implication and
biconditional associate to the right, exclusive disjunction to the left.
Unparenthesized chains of ∧ (or ∨) become one n-ary node, while written
parentheses are kept, so "P & Q & R" and "P & (Q & R)" parse differently.
Quantifier bodies must be parenthesized unless the body is itself another
quantifier, e.g. "\\A x \\A y (P(x,y))".

An identifier in term position is a variable when an enclosing quantifier
binds it and a constant otherwise.  A bare identifier in formula position
is an atom.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    FORMULA_SYMBOL,
    TERM_SYMBOL,
    And,
    ArityConflict,
    Atom,
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
    Bottom,
    Variable,
    Xor,
)


class ParseError(ValueError):
    """Syntax error with the offending position (0-based character offset)."""

    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position
        self.reason = message


_SIMPLE = {
    "¬": "NOT",
    "~": "NOT",
    "∧": "AND",
    "&": "AND",
    "∨": "OR",
    "|": "OR",
    "⊕": "XOR",
    "→": "IMPLIES",
    "↔": "IFF",
    "∀": "FORALL",
    "∃": "EXISTS",
    "⊤": "TOP",
    "⊥": "BOTTOM",
    "=": "EQUALS",
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
}

_BACKSLASH = {
    "\\top": "TOP",
    "\\bot": "BOTTOM",
    "\\A": "FORALL",
    "\\E": "EXISTS",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(" and text.startswith("(+)", i):
            tokens.append(_Token("XOR", "(+)", i))
            i += 3
            continue
        if ch == "<":
            if text.startswith("<->", i):
                tokens.append(_Token("IFF", "<->", i))
                i += 3
                continue
            raise ParseError(f"unexpected character '<' (did you mean '<->'?)", i)
        if ch == "-":
            if text.startswith("->", i):
                tokens.append(_Token("IMPLIES", "->", i))
                i += 2
                continue
            raise ParseError("unexpected character '-' (did you mean '->'?)", i)
        if ch == "\\":
            end = i + 1
            while end < n and text[end].isalpha():
                end += 1
            word = text[i:end]
            kind = _BACKSLASH.get(word)
            if kind is None:
                raise ParseError(
                    f"unknown symbol '{word}' (known: \\A, \\E, \\top, \\bot)", i
                )
            tokens.append(_Token(kind, word, i))
            i = end
            continue
        if ch in _SIMPLE:
            tokens.append(_Token(_SIMPLE[ch], ch, i))
            i += 1
            continue
        if ch.isalpha():
            end = i + 1
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            tokens.append(_Token("IDENT", text[i:end], i))
            i = end
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("EOF", "", n))
    return tokens


_DESCRIBE = {
    "NOT": "'¬'",
    "AND": "'∧'",
    "OR": "'∨'",
    "XOR": "'⊕'",
    "IMPLIES": "'→'",
    "IFF": "'↔'",
    "FORALL": "'∀'",
    "EXISTS": "'∃'",
    "TOP": "'⊤'",
    "BOTTOM": "'⊥'",
    "EQUALS": "'='",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "COMMA": "','",
    "IDENT": "an identifier",
    "EOF": "end of input",
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.bound: list[str] = []
        # (role, symbol) -> arity, for the consistent-arity check
        self.signature: dict[tuple[str, str], int] = {}

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {_DESCRIBE[kind]} but found "
                f"{self._found(tok)}",
                tok.pos,
            )
        return self.next()

    @staticmethod
    def _found(tok: _Token) -> str:
        if tok.kind == "EOF":
            return "end of input"
        return f"'{tok.text}'"

    def _note_arity(self, role: str, symbol: str, arity: int, pos: int) -> None:
        key = (role, symbol)
        old = self.signature.get(key)
        if old is None:
            self.signature[key] = arity
        elif old != arity:
            conflict = ArityConflict(symbol, role, old, arity)
            raise ParseError(str(conflict), pos)

    # -- grammar -----------------------------------------------------------

    def parse(self) -> Formula:
        if self.peek().kind == "EOF":
            raise ParseError("empty statement", 0)
        f = self.iff()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"unexpected {self._found(tok)} after the statement", tok.pos)
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek().kind == "IFF":
            self.next()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.xor()
        if self.peek().kind == "IMPLIES":
            self.next()
            return Implies(left, self.implies())
        return left

    def xor(self) -> Formula:
        node = self.disjunction()
        while self.peek().kind == "XOR":
            self.next()
            node = Xor(node, self.disjunction())
        return node

    def disjunction(self) -> Formula:
        first = self.conjunction()
        if self.peek().kind != "OR":
            return first
        children = [first]
        while self.peek().kind == "OR":
            self.next()
            children.append(self.conjunction())
        return Or(tuple(children))

    def conjunction(self) -> Formula:
        first = self.unary()
        if self.peek().kind != "AND":
            return first
        children = [first]
        while self.peek().kind == "AND":
            self.next()
            children.append(self.unary())
        return And(tuple(children))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.next()
            return Not(self.unary())
        if tok.kind in ("FORALL", "EXISTS"):
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        quant = self.next()
        var = self.expect("IDENT")
        self.bound.append(var.text)
        try:
            tok = self.peek()
            if tok.kind in ("FORALL", "EXISTS"):
                body = self.quantifier()
            else:
                self.expect("LPAREN")
                body = self.iff()
                self.expect("RPAREN")
        finally:
            self.bound.pop()
        cls = Forall if quant.kind == "FORALL" else Exists
        return cls(var.text, body)

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.next()
            f = self.iff()
            self.expect("RPAREN")
            return f
        if tok.kind == "TOP":
            self.next()
            return Top()
        if tok.kind == "BOTTOM":
            self.next()
            return Bottom()
        if tok.kind == "IDENT":
            return self.atomic()
        raise ParseError(f"expected a statement but found {self._found(tok)}", tok.pos)

    def atomic(self) -> Formula:
        """Atom, predicate application, or equality between terms."""
        ident = self.next()
        args: list[Term] | None = None
        if self.peek().kind == "LPAREN":
            if ident.text in self.bound:
                raise ParseError(
                    f"'{ident.text}' is bound by a quantifier here and cannot "
                    "be applied to arguments",
                    ident.pos,
                )
            self.next()
            args = [self.term()]
            while self.peek().kind == "COMMA":
                self.next()
                args.append(self.term())
            self.expect("RPAREN")
        if self.peek().kind == "EQUALS":
            self.next()
            lhs = self._ident_term(ident, args)
            rhs = self.term()
            return Equals(lhs, rhs)
        if args is not None:
            self._note_arity(FORMULA_SYMBOL, ident.text, len(args), ident.pos)
            return PredApp(ident.text, tuple(args))
        if ident.text in self.bound:
            raise ParseError(
                f"'{ident.text}' is bound by a quantifier here and cannot "
                "be used as a propositional atom",
                ident.pos,
            )
        self._note_arity(FORMULA_SYMBOL, ident.text, 0, ident.pos)
        return Atom(ident.text)

    def _ident_term(self, ident: _Token, args: list[Term] | None) -> Term:
        if args is not None:
            self._note_arity(TERM_SYMBOL, ident.text, len(args), ident.pos)
            return FuncApp(ident.text, tuple(args))
        if ident.text in self.bound:
            return Variable(ident.text)
        self._note_arity(TERM_SYMBOL, ident.text, 0, ident.pos)
        return Constant(ident.text)

    def term(self) -> Term:
        ident = self.expect("IDENT")
        if self.peek().kind == "LPAREN":
            if ident.text in self.bound:
                raise ParseError(
                    f"'{ident.text}' is bound by a quantifier here and cannot "
                    "be applied to arguments",
                    ident.pos,
                )
            self.next()
            args = [self.term()]
            while self.peek().kind == "COMMA":
                self.next()
                args.append(self.term())
            self.expect("RPAREN")
            self._note_arity(TERM_SYMBOL, ident.text, len(args), ident.pos)
            return FuncApp(ident.text, tuple(args))
        return self._ident_term(ident, None)


def parse(text: str) -> Formula:
    """Parse one statement; raises ParseError with position on bad input."""
    if not isinstance(text, str):
        raise TypeError("statement must be a string")
    return _Parser(text).parse()
