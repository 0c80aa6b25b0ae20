"""Reader and writer for the clause-normal-form subset of TPTP.

Only ``cnf(name, role, clause).`` statements are accepted.  Every clause's
variables are renamed to ``X<i>_<j>`` (clause position, first occurrence), so
clauses never share variables.  Roles are kept as metadata only.
"""

from __future__ import annotations

import re

from .dimacs import ProblemFile
from .errors import ParseError, UnsupportedFeature
from .logic import Clause, ClauseSet, SymbolTable, rename_apart
from .text import TokenStream, parse_disjunction, tokenize

UNSUPPORTED_KINDS = ("fof", "tff", "thf", "tcf", "tpi", "include")
# checked before tokenizing, since typed formulas use characters the clause lexer rejects
_UNSUPPORTED_HEAD = re.compile(r"^\s*(" + "|".join(UNSUPPORTED_KINDS) + r")\s*\(", re.MULTILINE)


def _skip_annotations(ts: TokenStream):
    depth = 0
    while True:
        tok = ts.peek()
        if tok is None:
            ts.next()
        if tok.text in ("(", "["):
            depth += 1
        elif tok.text in (")", "]"):
            if depth == 0:
                return
            depth -= 1
        ts.next()


def _statement(ts: TokenStream):
    head = ts.next()
    if head.kind != "word":
        raise ParseError(f"expected 'cnf(', found {head.text!r}", head.line, head.col)
    if head.text in UNSUPPORTED_KINDS:
        raise UnsupportedFeature(f"{head.text} statements are not supported (CNF only)", head.line, head.col)
    if head.text != "cnf":
        raise ParseError(f"unknown statement {head.text!r}", head.line, head.col)
    ts.expect("(")
    name = ts.next()
    if name.kind not in ("word", "squote"):
        raise ParseError(f"bad clause name {name.text!r}", name.line, name.col)
    ts.expect(",")
    role = ts.next()
    if role.kind != "word" or not role.text[0].islower():
        raise ParseError(f"bad role {role.text!r}", role.line, role.col)
    ts.expect(",")
    lits = parse_disjunction(ts)
    if ts.accept(","):
        _skip_annotations(ts)
    ts.expect(")")
    ts.expect(".")
    return name.text, role.text, Clause(lits), head.line


def parse_tptp_cnf(text: str, name: str | None = None) -> ProblemFile:
    m = _UNSUPPORTED_HEAD.search(text)
    if m:
        line = text.count("\n", 0, m.start(1)) + 1
        col = m.start(1) - (text.rfind("\n", 0, m.start(1)) + 1) + 1
        raise UnsupportedFeature(f"{m.group(1)} statements are not supported (CNF only)", line, col)
    ts = TokenStream(tokenize(text))
    names, roles, clauses = [], [], []
    symbols = SymbolTable()
    while not ts.at_end():
        cname, role, clause, line = _statement(ts)
        try:
            for lit in clause.lits:
                symbols.note_literal(lit)
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
        names.append(cname)
        roles.append(role)
        clauses.append(clause)
    s = rename_apart(ClauseSet(clauses))
    meta = {"name": name, "clause_names": names, "roles": roles, "warnings": []}
    return ProblemFile("tptp_cnf", s, meta)


def tptp_to_text(s, names=None, roles=None) -> str:
    lines = []
    for i, c in enumerate(s, start=1):
        cname = names[i - 1] if names else f"c{c.id if c.id is not None else i}"
        role = roles[i - 1] if roles else "axiom"
        lines.append(f"cnf({cname}, {role}, {'$false' if c.is_empty else str(c)}).")
    return "\n".join(lines) + "\n"
