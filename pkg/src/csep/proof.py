"""Deduction steps, proofs, verdicts and their JSON documents."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .logic import Clause, Literal, Substitution, Var
from .text import clause_from_text, literal_from_text, term_from_text

PROOF_FORMAT = "csep-proof/1"
MODEL_FORMAT = "csep-model/1"

UNSAT = "UNSAT"
SAT = "SAT"
UNKNOWN = "UNKNOWN"

SZS = {UNSAT: "Unsatisfiable", SAT: "Satisfiable", UNKNOWN: "Unknown"}


@dataclass(frozen=True)
class ProofEntry:
    """One participant of a step: parent id, its substitution and boundary literals."""

    parent: int
    subst: Substitution
    main: Literal | None
    secondary: Literal | None
    minus: tuple


@dataclass(frozen=True)
class DeductionStep:
    id: int
    csc: Clause
    entries: tuple

    @property
    def parents(self) -> tuple:
        return tuple(e.parent for e in self.entries)


@dataclass
class Proof:
    steps: list
    inputs: dict = field(default_factory=dict)  # id -> Clause as used by the engine

    @property
    def is_refutation(self) -> bool:
        return bool(self.steps) and self.steps[-1].csc.is_empty

    def __len__(self):
        return len(self.steps)


@dataclass
class Verdict:
    status: str
    mode: str = "prop"
    proof: Proof | None = None
    model: frozenset | None = None  # propositional satisfying literals
    sketch: object | None = None  # first-order witness
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def szs(self) -> str:
        return SZS[self.status]

    def __repr__(self):
        extra = f", reason={self.reason!r}" if self.reason else ""
        return f"Verdict({self.status}, mode={self.mode}{extra})"


# --------------------------------------------------------------------------
# documents


def _lit_text(lit):
    return None if lit is None else str(lit)


def _sorted_lits(lits):
    return sorted(lits, key=lambda l: (str(l).lstrip("~"), not l.positive))


def proof_to_dict(proof: Proof, mode: str = "prop", status: str = UNSAT) -> dict:
    return {
        "format": PROOF_FORMAT,
        "mode": mode,
        "verdict": SZS[status],
        "inputs": [{"id": cid, "clause": str(c)} for cid, c in sorted(proof.inputs.items())],
        "steps": [
            {
                "id": st.id,
                "csc": str(st.csc),
                "entries": [
                    {
                        "parent": e.parent,
                        "subst": {v.name: str(t) for v, t in sorted(e.subst.items(), key=lambda kv: kv[0].name)},
                        "main": _lit_text(e.main),
                        "secondary": _lit_text(e.secondary),
                        "minus": [str(l) for l in _sorted_lits(e.minus)],
                    }
                    for e in st.entries
                ],
            }
            for st in proof.steps
        ],
    }


def dump_proof(proof: Proof, mode: str = "prop", status: str = UNSAT) -> str:
    return json.dumps(proof_to_dict(proof, mode, status), indent=1, sort_keys=True) + "\n"


def _opt_lit(text):
    return None if text is None else literal_from_text(text)


def proof_from_dict(doc: dict) -> tuple[Proof, dict]:
    """Rebuild a Proof; returns it with the document's header fields."""
    if doc.get("format") != PROOF_FORMAT:
        raise ParseError(f"not a {PROOF_FORMAT} document")
    try:
        inputs = {int(item["id"]): clause_from_text(item["clause"]).with_id(int(item["id"])) for item in doc.get("inputs", [])}
        steps = []
        for st in doc["steps"]:
            entries = []
            for e in st["entries"]:
                subst = Substitution({Var(v): term_from_text(t) for v, t in e["subst"].items()})
                entries.append(
                    ProofEntry(
                        parent=int(e["parent"]),
                        subst=subst,
                        main=_opt_lit(e.get("main")),
                        secondary=_opt_lit(e.get("secondary")),
                        minus=tuple(literal_from_text(t) for t in e["minus"]),
                    )
                )
            sid = int(st["id"])
            steps.append(DeductionStep(id=sid, csc=clause_from_text(st["csc"]).with_id(sid, "derived"), entries=tuple(entries)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed proof document: {exc}") from exc
    header = {"mode": doc.get("mode"), "verdict": doc.get("verdict")}
    return Proof(steps=steps, inputs=inputs), header


def load_proof(text: str) -> tuple[Proof, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return proof_from_dict(doc)


def model_to_dict(verdict: Verdict) -> dict:
    doc = {"format": MODEL_FORMAT, "mode": verdict.mode, "verdict": verdict.szs}
    if verdict.model is not None:
        doc["model"] = [str(l) for l in _sorted_lits(verdict.model)]
    if verdict.sketch is not None:
        doc["interpretation"] = verdict.sketch.to_dict()
    return doc


def dump_model(verdict: Verdict) -> str:
    return json.dumps(model_to_dict(verdict), indent=1, sort_keys=True) + "\n"


def load_model(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("format") != MODEL_FORMAT:
        raise ParseError(f"not a {MODEL_FORMAT} document")
    if "model" in doc:
        doc["model"] = [literal_from_text(t) for t in doc["model"]]
    return doc
