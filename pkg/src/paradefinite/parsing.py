"""Concrete text syntax: tokenizer, recursive-descent parser and printer.

Grammar (precedence ``~`` > ``&`` > ``|`` > ``->``; ``&`` and ``|`` are
left-associative, ``->`` is right-associative)::

    sequent := [formula ("," formula)*] "|-" [formula ("," formula)*]
    formula := disj ["->" formula]
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | primary
    primary := ATOM | "#" | "(" formula ")"
    ATOM    := [a-z][a-z0-9_]*
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import FormulaSyntaxError
from .syntax import FALSUM, And, Atom, Falsum, Formula, Implies, Not, Or, Sequent

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<turnstile>\|-)
  | (?P<implies>->)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<not>~)
  | (?P<falsum>\#)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<atom>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)

_SHOW = {
    "turnstile": "'|-'",
    "implies": "'->'",
    "and": "'&'",
    "or": "'|'",
    "not": "'~'",
    "falsum": "'#'",
    "lparen": "'('",
    "rparen": "')'",
    "comma": "','",
    "atom": "atom",
    "eof": "end of input",
}

_FORMULA_START = {"atom", "falsum", "not", "lparen"}


class Token(NamedTuple):
    kind: str
    text: str
    offset: int  # byte offset into the UTF-8 encoded input


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            offset = len(text[:pos].encode("utf-8"))
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", text, offset)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), len(text[:pos].encode("utf-8"))))
        pos = m.end()
    tokens.append(Token("eof", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(
            f"unexpected {found}", self.text, tok.offset, (_SHOW[k] for k in expected)
        )

    def expect(self, kind: str) -> Token:
        if self.peek.kind != kind:
            self.fail({kind})
        return self.advance()

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek.kind == "implies":
            self.advance()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek.kind == "or":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek.kind == "and":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek.kind == "not":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek
        if tok.kind == "atom":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "falsum":
            self.advance()
            return FALSUM
        if tok.kind == "lparen":
            self.advance()
            f = self.formula()
            self.expect("rparen")
            return f
        self.fail(_FORMULA_START)

    def formula_list(self, stop: str) -> list[Formula]:
        if self.peek.kind == stop:
            return []
        items = [self.formula()]
        while self.peek.kind == "comma":
            self.advance()
            items.append(self.formula())
        return items


_AFTER_FORMULA = {"and", "or", "implies"}


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek.kind != "eof":
        p.fail(_AFTER_FORMULA | {"eof"})
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    if not any(t.kind == "turnstile" for t in p.tokens):
        raise FormulaSyntaxError(
            "missing '|-' separator", text, len(text.encode("utf-8")), ["'|-'"]
        )
    left = p.formula_list("turnstile")
    if p.peek.kind != "turnstile":
        p.fail(_AFTER_FORMULA | {"comma", "turnstile"})
    p.advance()
    right = p.formula_list("eof")
    if p.peek.kind != "eof":
        p.fail(_AFTER_FORMULA | {"comma", "eof"})
    return Sequent.of(left, right)


_PREC = {"implies": 1, "or": 2, "and": 3, "not": 4, "atom": 5, "falsum": 5}
_SYMBOL = {"implies": "->", "or": "|", "and": "&"}


def print_formula(f: Formula) -> str:
    """Render with the fewest parentheses the precedence rules allow."""
    t = type(f)
    if t is Atom:
        return f.name
    if t is Falsum:
        return "#"
    if t is Not:
        inner = print_formula(f.operand)
        return "~" + (inner if _PREC[f.operand.tag] >= 4 else f"({inner})")
    prec = _PREC[f.tag]
    right_assoc = t is Implies
    left = print_formula(f.left)
    lp = _PREC[f.left.tag]
    if lp < prec or (lp == prec and right_assoc):
        left = f"({left})"
    right = print_formula(f.right)
    rp = _PREC[f.right.tag]
    if rp < prec or (rp == prec and not right_assoc):
        right = f"({right})"
    return f"{left} {_SYMBOL[f.tag]} {right}"


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.sorted_left())
    right = ", ".join(print_formula(f) for f in s.sorted_right())
    return " ".join(part for part in (left, "|-", right) if part)

