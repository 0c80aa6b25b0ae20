"""DIMACS CNF reader and writer.

Variable ``n`` becomes the propositional atom ``v<n>``, unless a ``c atom <n>
<name>`` comment (written by :func:`dimacs_to_text`) names it.  Count mismatches
against the ``p cnf`` header are tolerated and reported as warnings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .logic import Clause, ClauseSet, Literal

_VAR_NAME = re.compile(r"v([1-9][0-9]*)$")
_ATOM_COMMENT = re.compile(r"c\s+atom\s+([1-9][0-9]*)\s+([a-z][A-Za-z0-9_]*)\s*$")


@dataclass
class ProblemFile:
    format: str  # "dimacs" or "tptp_cnf"
    clauses: ClauseSet
    metadata: dict = field(default_factory=dict)

    @property
    def warnings(self) -> list:
        return self.metadata.setdefault("warnings", [])


def var_name(n: int) -> str:
    return f"v{n}"


def parse_dimacs(text: str, name: str | None = None) -> ProblemFile:
    header = None
    clauses = []
    current: list = []
    current_line = None
    max_var = 0
    names = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            m = _ATOM_COMMENT.match(line)
            if m:
                names[int(m.group(1))] = m.group(2)
            continue
        if line.startswith("%"):
            break  # SATLIB end marker
        if line.startswith("p"):
            if header is not None:
                raise ParseError("second problem header", lineno, 1)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}; expected 'p cnf <vars> <clauses>'", lineno, 1)
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}; counts must be integers", lineno, 1) from None
            if nv < 0 or nc < 0:
                raise ParseError("negative count in header", lineno, 1)
            header = (nv, nc)
            continue
        if header is None:
            raise ParseError("clause data before the 'p cnf' header", lineno, 1)
        for m in re.finditer(r"\S+", raw):
            tok = m.group()
            try:
                n = int(tok)
            except ValueError:
                raise ParseError(f"non-integer token {tok!r}", lineno, m.start() + 1) from None
            if n == 0:
                clauses.append(current)
                current = []
                current_line = None
                continue
            if current_line is None:
                current_line = lineno
            max_var = max(max_var, abs(n))
            current.append(n)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("clause is missing its terminating 0", current_line)
    meta = {"name": name, "declared_vars": header[0], "declared_clauses": header[1], "warnings": []}
    if len(clauses) != header[1]:
        meta["warnings"].append(f"header declares {header[1]} clauses, found {len(clauses)}")
    if max_var > header[0]:
        meta["warnings"].append(f"header declares {header[0]} variables, found variable {max_var}")
    built = [Clause(Literal(n > 0, names.get(abs(n)) or var_name(abs(n))) for n in c) for c in clauses]
    return ProblemFile("dimacs", ClauseSet(built), meta)


def variable_numbers(s) -> dict:
    """Atom name -> DIMACS number; ``v<n>`` atoms keep n, others follow after."""
    numbers = {}
    others = []
    for c in s:
        for lit in c.lits:
            if lit.args:
                raise ParseError(f"first-order literal {lit} cannot be written as DIMACS")
            m = _VAR_NAME.match(lit.pred)
            if m:
                numbers[lit.pred] = int(m.group(1))
            elif lit.pred not in others:
                others.append(lit.pred)
    nxt = max(numbers.values(), default=0)
    for p in others:
        nxt += 1
        numbers[p] = nxt
    return numbers


def dimacs_to_text(s, comment: str | None = None) -> str:
    numbers = variable_numbers(s)
    lines = []
    if comment:
        lines.extend(f"c {row}" for row in comment.splitlines())
    for p, n in sorted(numbers.items(), key=lambda kv: kv[1]):
        if p != var_name(n):
            lines.append(f"c atom {n} {p}")
    clauses = list(s)
    lines.append(f"p cnf {max(numbers.values(), default=0)} {len(clauses)}")
    for c in clauses:
        lits = [str(numbers[l.pred] if l.positive else -numbers[l.pred]) for l in c.lits]
        lines.append(" ".join(lits + ["0"]))
    return "\n".join(lines) + "\n"
