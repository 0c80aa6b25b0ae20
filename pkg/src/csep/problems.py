"""Format detection and problem loading."""

from __future__ import annotations

import re
from pathlib import Path

from .dimacs import ProblemFile, dimacs_to_text, parse_dimacs
from .errors import ParseError
from .tptp import parse_tptp_cnf, tptp_to_text

FORMATS = ("dimacs", "tptp_cnf")

_DIMACS_HEADER = re.compile(r"^\s*p\s+cnf\b", re.MULTILINE)
_TPTP_STATEMENT = re.compile(r"^\s*(cnf|fof|tff|thf|tcf|include)\s*\(", re.MULTILINE)


def detect_format(text: str, path: str | None = None) -> str:
    """Sniff the content first; fall back on the file extension."""
    if _TPTP_STATEMENT.search(text):
        return "tptp_cnf"
    if _DIMACS_HEADER.search(text):
        return "dimacs"
    suffix = Path(path).suffix.lower() if path else ""
    if suffix in (".p", ".tptp", ".ax"):
        return "tptp_cnf"
    if suffix in (".cnf", ".dimacs"):
        return "dimacs"
    raise ParseError("cannot tell whether the input is DIMACS or TPTP CNF")


def parse_problem(text: str, fmt: str | None = None, name: str | None = None) -> ProblemFile:
    fmt = fmt or detect_format(text, name)
    if fmt == "dimacs":
        return parse_dimacs(text, name)
    if fmt == "tptp_cnf":
        return parse_tptp_cnf(text, name)
    raise ValueError(f"unknown format {fmt!r}")


def load_problem(path, fmt: str | None = None) -> ProblemFile:
    path = Path(path)
    text = path.read_text()
    return parse_problem(text, fmt or detect_format(text, str(path)), path.name)


def problem_to_text(problem: ProblemFile) -> str:
    if problem.format == "dimacs":
        return dimacs_to_text(problem.clauses)
    meta = problem.metadata
    return tptp_to_text(problem.clauses, meta.get("clause_names"), meta.get("roles"))
