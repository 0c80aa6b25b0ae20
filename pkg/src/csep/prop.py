"""Propositional engine: preprocessing, extension saturation and model extraction."""

from __future__ import annotations

from .config import StrategyConfig
from .errors import ContractViolation, SoundnessError
from .kernel import CscResult, ExtensionState
from .logic import ClauseSet, Literal, complement, is_tautology
from .proof import SAT, UNSAT, Proof, Verdict
from .search import Record, Saturator


def _require_prop(s):
    for c in s:
        for lit in c.lits:
            if lit.args:
                raise ContractViolation(f"propositional engine given first-order literal {lit}")


def pure_literals(clauses) -> set:
    lits = set()
    for c in clauses:
        lits.update(c.lits)
    return {l for l in lits if complement(l) not in lits}


def preprocess_with_trace(s: ClauseSet) -> tuple[ClauseSet, list]:
    """Tautology and pure-literal elimination to a fixpoint.

    Returns the reduced set and the pure literals in the order they were used.
    """
    _require_prop(s)
    kept = [c for c in s if not is_tautology(c)]
    used = []
    while True:
        pure = pure_literals(kept)
        if not pure:
            break
        used.extend(sorted(pure, key=str))
        kept = [c for c in kept if not (c.literals & pure)]
    return ClauseSet(kept), used


def preprocess(s: ClauseSet) -> ClauseSet:
    return preprocess_with_trace(s)[0]


def satisfies(model, clauses) -> bool:
    m = set(model)
    return all(any(l in m for l in c.lits) for c in clauses)


def is_consistent(lits) -> bool:
    m = set(lits)
    return not any(complement(l) in m for l in m)


def complete_model(partial, pure, clauses) -> frozenset:
    """Extend a partial assignment with the pure literals, then default the rest to false."""
    model = set(partial)
    assigned = {l.pred for l in model}
    for l in reversed(pure):
        if l.pred not in assigned:
            model.add(l)
            assigned.add(l.pred)
    for c in clauses:
        for l in c.lits:
            if l.pred not in assigned:
                model.add(Literal(False, l.pred))
                assigned.add(l.pred)
    return frozenset(model)


def extract_model(state, s) -> frozenset | None:
    """Satisfying literals read off a closed extension that covers every clause of ``s``.

    ``state`` is a CscResult or an ExtensionState (treated as closed).  The
    candidate takes the complements of the main literals after some position,
    a positive-part literal y at that position, and the main literals before
    it.  Returns None when no position qualifies.
    """
    if isinstance(state, CscResult):
        entries = list(state.entries)
        st = state.state
    elif isinstance(state, ExtensionState):
        st = state
        entries = st.entries(closed=True)
    else:
        raise ContractViolation("extract_model needs a closed extension")
    clauses = list(s)
    if not {c.id for c in clauses} <= set(st.source_ids):
        return None
    k = len(entries)
    xs = [e.extended_literal for e in entries[:-1]]
    for j0 in range(k, 0, -1):
        later = xs[j0 - 1 :]
        earlier = xs[: j0 - 1]
        if set(later) & set(earlier):
            continue
        for y in sorted(entries[j0 - 1].plus, key=str):
            if y in later:
                continue
            model = {complement(x) for x in later} | {y} | set(earlier)
            if not is_consistent(model):
                continue
            if not satisfies(model, clauses):
                raise SoundnessError(f"extracted assignment {sorted(map(str, model))} fails a covered clause")
            return frozenset(model)
    return None


def ordered_model(clauses) -> frozenset:
    """Candidate model of a resolution-saturated ground clause set.

    Atoms are decided in ascending order: an atom is made true when some clause
    whose greatest atom it is contains it positively and is otherwise false.
    """
    by_max = {}
    for c in clauses:
        if not c.lits:
            raise ContractViolation("ordered_model on a set containing the empty clause")
        top = max(l.pred for l in c.lits)
        by_max.setdefault(top, []).append(c)
    model = {}
    for atom in sorted({l.pred for c in clauses for l in c.lits}):
        value = False
        for c in by_max.get(atom, ()):
            if Literal(True, atom) not in c.literals:
                continue
            if all(l.pred == atom or model.get(l.pred) != l.positive for l in c.lits):
                value = True
                break
        model[atom] = value
    return frozenset(Literal(v, a) for a, v in model.items())


class PropSaturator(Saturator):
    mode = "prop"

    def __init__(self, clauses: ClauseSet, cfg: StrategyConfig | None = None, observer=None):
        _require_prop(clauses)
        super().__init__(clauses, cfg, observer)
        self.original = list(clauses)
        self.pure: list = []

    def literal_key(self, lit):
        # fewer partner clauses first keeps early branching small
        return (len(self._index.get((not lit.positive, lit.pred, 0), ())),)

    def simplify(self):
        recs = self.active_records()
        for r in recs:
            if is_tautology(r.clause):
                r.active = False
        while True:
            recs = self.active_records()
            pure = pure_literals(r.clause for r in recs)
            if not pure:
                break
            self.pure.extend(sorted(pure, key=str))
            for r in recs:
                if r.clause.literals & pure:
                    r.active = False
        if not self.active_records():
            return self._sat(frozenset(), "all clauses removed by simplification")
        return None

    def _sat(self, partial, how) -> Verdict:
        model = complete_model(partial, self.pure, self.original)
        if not is_consistent(model) or not satisfies(model, self.original):
            raise SoundnessError(f"model from {how} does not satisfy the input")
        return Verdict(SAT, self.mode, model=model, reason=how, stats=self.stats)

    def chain_sat(self, res):
        inputs = [self.records[i].clause for i in sorted(self.active_inputs())]
        m = extract_model(res, inputs)
        if m is None:
            return None
        return self._sat(m, "covering extension")

    def saturated(self):
        active = [r.clause for r in self.active_records()]
        m = ordered_model(active)
        if not satisfies(m, active):
            raise SoundnessError("saturated set but the ordered model fails")
        return self._sat(m, "saturation")


def saturate(s: ClauseSet, cfg: StrategyConfig | None = None, observer=None) -> Verdict:
    """Decide a propositional clause set.

    Preprocessing is re-applied at the start of every round, so raw input is
    accepted as well.  Proof parents refer to the ids of ``s``.
    """
    for c in s:
        if c.is_empty:
            return Verdict(UNSAT, "prop", proof=Proof(steps=[], inputs={c.id: c}), reason="empty input clause")
    return PropSaturator(s, cfg, observer).run()


__all__ = [
    "preprocess",
    "preprocess_with_trace",
    "saturate",
    "extract_model",
    "ordered_model",
    "complete_model",
    "satisfies",
    "PropSaturator",
    "Record",
]
