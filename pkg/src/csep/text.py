"""Tokenizer and parser for TPTP-style terms, literals and clauses.

Shared by the TPTP reader and the proof-document reader.  Variables start with
an uppercase letter or ``_``; everything else alphanumeric is a functor.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnsupportedFeature
from .logic import Clause, Fn, Literal, Var

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>%[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<neq>!=)
  | (?P<implies><=>|=>|<=|<~>)
  | (?P<punct>[(),.|~&=\[\]:!?])
  | (?P<dollar>\$[a-z_]+)
  | (?P<squote>'(?:[^'\\]|\\.)*')
  | (?P<dquote>"(?:[^"\\]|\\.)*")
  | (?P<word>[A-Za-z0-9_]+)
    """,
    re.VERBOSE | re.DOTALL,
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text: str, line_offset: int = 0) -> list[Token]:
    out = []
    pos = 0
    line = 1 + line_offset
    line_start = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "block_comment" and not chunk.endswith("*/"):
            raise ParseError("unterminated comment", line, pos - line_start + 1)
        if kind not in ("ws", "line_comment", "block_comment"):
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("trailing input", line, pos - line_start + 1)
    return out


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    def peek(self, k: int = 0) -> Token | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            raise ParseError("unexpected end of input", last.line if last else None, last.col if last else None)
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False


def _is_var(word: str) -> bool:
    return word[0].isupper() or word[0] == "_"


def parse_term(ts: TokenStream):
    tok = ts.next()
    if tok.kind == "word":
        if _is_var(tok.text):
            return Var(tok.text)
        name = tok.text
    elif tok.kind == "squote":
        name = tok.text
    elif tok.kind in ("dquote", "dollar"):
        raise UnsupportedFeature(f"{tok.text} is outside the supported term language", tok.line, tok.col)
    else:
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)
    args = []
    if ts.accept("("):
        args.append(parse_term(ts))
        while ts.accept(","):
            args.append(parse_term(ts))
        ts.expect(")")
    return Fn(name, args)


def _reject_equality(ts: TokenStream):
    tok = ts.peek()
    if tok is not None and tok.text in ("=", "!="):
        raise UnsupportedFeature("equality literals are not supported", tok.line, tok.col)


def parse_literal(ts: TokenStream) -> Literal:
    positive = True
    while ts.accept("~"):
        positive = not positive
    tok = ts.peek()
    if tok is None:
        ts.next()
    if tok.text == "(":
        raise ParseError("parenthesised literal not allowed here", tok.line, tok.col)
    if tok.kind == "dollar":
        raise UnsupportedFeature(f"{tok.text} inside a clause is not supported", tok.line, tok.col)
    start = tok
    t = parse_term(ts)
    _reject_equality(ts)
    if isinstance(t, Var):
        raise ParseError(f"variable {t} used as an atom", start.line, start.col)
    return Literal(positive, t.name, t.args)


def parse_disjunction(ts: TokenStream) -> list[Literal]:
    """``lit | lit | ...``, optionally parenthesised; ``$false`` is the empty clause."""
    tok = ts.peek()
    if tok is not None and tok.text == "$false":
        ts.next()
        return []
    if tok is not None and tok.text == "(":
        ts.next()
        lits = parse_disjunction(ts)
        ts.expect(")")
        return lits
    lits = [parse_literal(ts)]
    while ts.accept("|"):
        lits.append(parse_literal(ts))
    nxt = ts.peek()
    if nxt is not None and nxt.text in ("&", "=>", "<=", "<=>", "<~>", "!", "?"):
        raise UnsupportedFeature(f"connective {nxt.text!r} is outside clause normal form", nxt.line, nxt.col)
    return lits


def clause_from_text(text: str) -> Clause:
    ts = TokenStream(tokenize(text))
    lits = parse_disjunction(ts)
    if not ts.at_end():
        tok = ts.peek()
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return Clause(lits)


def literal_from_text(text: str) -> Literal:
    ts = TokenStream(tokenize(text))
    lit = parse_literal(ts)
    if not ts.at_end():
        tok = ts.peek()
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return lit


def term_from_text(text: str):
    ts = TokenStream(tokenize(text))
    t = parse_term(ts)
    if not ts.at_end():
        tok = ts.peek()
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return t


def clause_to_text(c: Clause) -> str:
    return str(c)
