"""First-order engine: preprocessing, saturation with unification, and finite witnesses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import StrategyConfig
from .errors import ContractViolation, ResourceLimit, SoundnessError
from .kernel import CscResult, ExtensionState, extend
from .logic import (
    Clause,
    ClauseSet,
    Literal,
    Var,
    complement,
    is_tautology,
    rename_apart,
    subsumes,
    unify_terms,
)
from .proof import SAT, UNKNOWN, UNSAT, Proof, Verdict
from .search import Saturator
from .text import literal_from_text

EVAL_CAP = 200_000


def preprocess_fol(s: ClauseSet) -> ClauseSet:
    """Drop tautologies and subsumed clauses, then rename variables apart.

    Of two mutually subsuming clauses the earlier one is kept.
    """
    kept = [c for c in s if not is_tautology(c)]
    out = []
    for i, c in enumerate(kept):
        redundant = False
        for j, d in enumerate(kept):
            if i == j or not subsumes(d, c):
                continue
            if not subsumes(c, d) or j < i:
                redundant = True
                break
        if not redundant:
            out.append(c)
    return rename_apart(ClauseSet(out))


def factor_substitutions(c: Clause) -> list:
    """Most general unifiers that merge literals of ``c``; None stands for no factoring."""
    found = {}
    frontier = [(c, None)]
    while frontier:
        cur, sub = frontier.pop()
        lits = cur.lits
        for i, j in itertools.combinations(range(len(lits)), 2):
            a, b = lits[i], lits[j]
            if a.positive != b.positive or a.pred != b.pred or len(a.args) != len(b.args):
                continue
            mgu = unify_terms(zip(a.args, b.args))
            if mgu is None:
                continue
            total = mgu if sub is None else sub.compose(mgu)
            total = total.restrict(c.vars())
            fc = total.clause(c)
            if fc not in found and len(fc) < len(c):
                found[fc] = total
                frontier.append((fc, total))
    return [None] + [found[k] for k in sorted(found, key=str)]


def extend_fol(state: ExtensionState, next_clause: Clause, y: Literal, x=None, source_id=None, pre=None):
    """Kernel extension plus an explicit re-check of every boundary pair after the sweep."""
    new = extend(state, next_clause, y, x=x, source_id=source_id, pre=pre)
    sigma = new.sigma
    for prev, cur in zip(new.slots, new.slots[1:]):
        if sigma.literal(cur.secondary) != complement(sigma.literal(prev.main)):
            raise SoundnessError("reverse substitution broke a boundary pair")
    return new


# --------------------------------------------------------------------------
# finite interpretations


@dataclass
class InterpretationSketch:
    """One literal per clause plus the finite interpretation that makes them all true.

    ``case`` is "disjoint-predicates" when the witness literal's predicate
    occurs nowhere else among the selected literals, "ground-distinct" when it
    meets its predicate with the opposite sign only on different ground atoms,
    and "same-polarity" when the predicate recurs with the same sign only.
    """

    selected: dict  # clause id -> Literal (as written in the clause)
    case: str = "disjoint-predicates"
    witness: tuple | None = None  # (clause id, Literal)
    clauses: tuple = ()
    domain: tuple = ()
    default_element: str = "d"
    functions: dict = field(default_factory=dict)  # name -> {(elements): element}
    predicates: dict = field(default_factory=dict)  # name -> (default, {(elements): bool})
    verified: bool = False

    @property
    def domain_note(self) -> str:
        return self.case

    def element(self, t, env):
        if isinstance(t, Var):
            return env[t]
        args = tuple(self.element(a, env) for a in t.args)
        return self.functions.get(t.name, {}).get(args, self.default_element)

    def holds(self, lit: Literal, env=None) -> bool:
        env = env or {}
        default, table = self.predicates.get(lit.pred, (False, {}))
        args = tuple(self.element(a, env) for a in lit.args)
        value = table.get(args, default)
        return value if lit.positive else not value

    def _assignments(self, variables):
        vs = sorted(variables, key=lambda v: v.name)
        if len(self.domain) ** len(vs) > EVAL_CAP:
            raise ResourceLimit("too many assignments to evaluate")
        for combo in itertools.product(self.domain, repeat=len(vs)):
            yield dict(zip(vs, combo))

    def literal_valid(self, lit: Literal) -> bool:
        return all(self.holds(lit, env) for env in self._assignments(lit.vars()))

    def clause_valid(self, c: Clause) -> bool:
        return all(any(self.holds(l, env) for l in c.lits) for env in self._assignments(c.vars()))

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "selected": {str(k): str(v) for k, v in sorted(self.selected.items())},
            "witness": None if self.witness is None else {"clause": self.witness[0], "literal": str(self.witness[1])},
            "domain": list(self.domain),
            "default_element": self.default_element,
            "functions": {
                f: [{"args": list(k), "value": v} for k, v in sorted(tab.items())]
                for f, tab in sorted(self.functions.items())
            },
            "predicates": {
                p: {"default": d, "exceptions": [{"args": list(k), "value": v} for k, v in sorted(tab.items())]}
                for p, (d, tab) in sorted(self.predicates.items())
            },
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "InterpretationSketch":
        """Rebuild the interpretation tables of a model document (selection included)."""
        selected = {int(k): literal_from_text(v) for k, v in doc.get("selected", {}).items()}
        w = doc.get("witness")
        return cls(
            selected=selected,
            case=doc.get("case", "disjoint-predicates"),
            witness=None if w is None else (int(w["clause"]), literal_from_text(w["literal"])),
            domain=tuple(doc["domain"]),
            default_element=doc["default_element"],
            functions={f: {tuple(r["args"]): r["value"] for r in rows} for f, rows in doc["functions"].items()},
            predicates={
                p: (table["default"], {tuple(r["args"]): r["value"] for r in table["exceptions"]})
                for p, table in doc["predicates"].items()
            },
            verified=bool(doc.get("verified")),
        )


class _Guard:
    """Incremental record of selected literals per predicate.

    A predicate selected in both polarities is allowed only when all of its
    selected occurrences are ground and no atom is selected both ways.
    """

    def __init__(self):
        self.pos = {}
        self.neg = {}
        self.nonground = set()

    def copy(self):
        g = _Guard()
        g.pos = {k: set(v) for k, v in self.pos.items()}
        g.neg = {k: set(v) for k, v in self.neg.items()}
        g.nonground = set(self.nonground)
        return g

    def admits(self, lit: Literal) -> bool:
        p = lit.pred
        other = self.neg if lit.positive else self.pos
        if p not in other:
            return True
        if not lit.ground or p in self.nonground:
            return False
        return lit.args not in other[p]

    def add(self, lit: Literal):
        (self.pos if lit.positive else self.neg).setdefault(lit.pred, set()).add(lit.args)
        if not lit.ground:
            self.nonground.add(lit.pred)


def guard_ok(lits) -> bool:
    g = _Guard()
    for l in lits:
        if not g.admits(l):
            return False
        g.add(l)
    return True


def _ground_subterms(t, acc):
    if isinstance(t, Var):
        return
    for a in t.args:
        _ground_subterms(a, acc)
    if t.ground:
        acc.add(t)


def build_model(sketch: InterpretationSketch) -> InterpretationSketch:
    """Construct and verify the finite interpretation for ``sketch.selected``.

    Ground terms occurring in the selected literals denote themselves; every
    other term denotes one extra element.  A predicate selected only
    positively is true everywhere, one selected only negatively false
    everywhere, and a predicate selected both ways is true exactly on its
    positively selected atoms.
    """
    lits = list(sketch.selected.values())
    if not guard_ok(lits):
        raise ContractViolation("selected literals do not meet the witness conditions")
    protected = set()
    for l in lits:
        for a in l.args:
            _ground_subterms(a, protected)
    names = {str(t) for t in protected}
    d = "d"
    while d in names:
        d += "'"
    functions = {}
    for t in protected:
        functions.setdefault(t.name, {})[tuple(str(a) for a in t.args)] = str(t)
    pos, neg = {}, {}
    for l in lits:
        (pos if l.positive else neg).setdefault(l.pred, []).append(l)
    predicates = {}
    for p in set(pos) | set(neg):
        if p not in neg:
            predicates[p] = (True, {})
        elif p not in pos:
            predicates[p] = (False, {})
        else:
            predicates[p] = (False, {tuple(str(a) for a in l.args): True for l in pos[p]})
    sketch.domain = tuple(sorted(names)) + (d,)
    sketch.default_element = d
    sketch.functions = functions
    sketch.predicates = predicates
    for cid, l in sketch.selected.items():
        if not sketch.literal_valid(l):
            raise SoundnessError(f"selected literal {l} of clause {cid} is not true in the built interpretation")
    for c in sketch.clauses:
        if not sketch.clause_valid(c):
            raise SoundnessError(f"clause {c} is not true in the built interpretation")
    sketch.verified = True
    return sketch


def _case_of(selected: dict, witness) -> str:
    if witness is None:
        mixed = any(
            any(l.pred == m.pred and l.positive != m.positive for m in selected.values()) for l in selected.values()
        )
        return "ground-distinct" if mixed else "disjoint-predicates"
    wid, y = witness
    others = [l for cid, l in selected.items() if cid != wid and l.pred == y.pred]
    if not others:
        return "disjoint-predicates"
    if any(l.positive != y.positive for l in others):
        return "ground-distinct"
    return "same-polarity"


def _same_clause_consistent(selected: dict, by_id: dict) -> bool:
    seen = {}
    for cid, lit in selected.items():
        key = by_id[cid].literals
        if key in seen and seen[key] != lit:
            return False
        seen[key] = lit
    return True


def _source_literal(state: ExtensionState, slot, inst: Literal) -> Literal | None:
    sigma = state.sigma
    for l in slot.source.lits:
        if sigma.literal(slot.binding.literal(l)) == inst:
            return l
    return None


def check_t1(state, s, verify_against=None) -> InterpretationSketch | None:
    """Satisfiability witness read off a closed extension that involves every clause of ``s``."""
    if isinstance(state, CscResult):
        st, entries = state.state, list(state.entries)
        if state.clause.is_empty:
            return None
    elif isinstance(state, ExtensionState):
        st, entries = state, state.entries(closed=True)
    else:
        raise ContractViolation("check_t1 needs a closed extension")
    by_id = {c.id: c for c in s}
    if not set(by_id) <= set(st.source_ids):
        return None
    k = len(entries)
    for j0 in range(k, 0, -1):
        for y in sorted(entries[j0 - 1].plus, key=str):
            picks = {}
            witness = None
            ok = True
            for i, (slot, e) in enumerate(zip(st.slots, entries), start=1):
                inst = e.secondary_literal if i > j0 else (y if i == j0 else e.extended_literal)
                if slot.source_id not in by_id:
                    continue
                src = _source_literal(st, slot, inst)
                if src is None or picks.get(slot.source_id, src) != src:
                    ok = False
                    break
                picks[slot.source_id] = src
                if i == j0:
                    witness = (slot.source_id, src)
            if not ok or not _same_clause_consistent(picks, by_id) or not guard_ok(picks.values()):
                continue
            sketch = InterpretationSketch(
                selected=dict(sorted(picks.items())),
                case=_case_of(picks, witness),
                witness=witness,
                clauses=tuple(verify_against if verify_against is not None else s),
            )
            return build_model(sketch)
    return None


def find_witness(clauses, cap: int = 100_000) -> InterpretationSketch | None:
    """Search for one literal per clause meeting the witness conditions."""
    clauses = [c for c in clauses if not is_tautology(c)]
    if any(c.is_empty for c in clauses):
        return None
    groups = {}
    for c in clauses:
        groups.setdefault(c.literals, []).append(c)
    reps = sorted(groups.values(), key=lambda g: (len(g[0]), g[0].id))
    budget = [cap]

    def order(lits, guard):
        def key(l):
            same = (guard.pos if l.positive else guard.neg).get(l.pred)
            other = (guard.neg if l.positive else guard.pos).get(l.pred)
            return (other is not None, same is None, not l.ground, str(l))

        return sorted(lits, key=key)

    def go(i, guard, picks):
        if i == len(reps):
            return picks
        rep = reps[i][0]
        for lit in order(rep.lits, guard):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            if not guard.admits(lit):
                continue
            g2 = guard.copy()
            g2.add(lit)
            picks2 = dict(picks)
            for c in reps[i]:
                picks2[c.id] = lit
            found = go(i + 1, g2, picks2)
            if found is not None:
                return found
        return None

    picks = go(0, _Guard(), {})
    if picks is None:
        return None
    selected = dict(sorted(picks.items()))
    sketch = InterpretationSketch(selected=selected, case=_case_of(selected, None), clauses=tuple(clauses))
    try:
        return build_model(sketch)
    except ResourceLimit:
        return None


# --------------------------------------------------------------------------
# saturation


class FolSaturator(Saturator):
    mode = "fol"

    def __init__(self, clauses: ClauseSet, cfg: StrategyConfig | None = None, observer=None):
        super().__init__(clauses, cfg, observer)
        self.original = list(clauses)
        self._factor_cache = {}
        recs = [self.records[i] for i in self.input_ids]
        for r in recs:
            if is_tautology(r.clause):
                r.active = False
        for r in recs:
            if not r.active:
                continue
            for r2 in recs:
                if r2 is r or not r2.active or not subsumes(r2.clause, r.clause):
                    continue
                if not subsumes(r.clause, r2.clause) or r2.id < r.id:
                    r.active = False
                    break

    def clause_key(self, rec):
        c = rec.clause
        return (not c.ground, len(c.vars()), len(c), rec.id)

    def literal_key(self, lit):
        return (not lit.ground, len(lit.vars()), len(self._index.get((not lit.positive, lit.pred, len(lit.args)), ())))

    def factors(self, clause):
        f = self._factor_cache.get(clause.id)
        if f is None:
            f = factor_substitutions(clause)
            self._factor_cache[clause.id] = f
        return f

    def _sat(self, sketch, how):
        return Verdict(SAT, self.mode, sketch=sketch, reason=how, stats=self.stats)

    def simplify(self):
        if not self.active_records():
            return self._sat(build_model(InterpretationSketch(selected={}, clauses=tuple(self.original))), "no clauses left")
        return None

    def chain_sat(self, res):
        inputs = [self.records[i].clause for i in sorted(self.active_inputs())]
        sketch = check_t1(res, inputs, verify_against=self.original)
        return None if sketch is None else self._sat(sketch, "covering extension")

    def _witness_or(self, reason):
        sketch = find_witness(self.original)
        if sketch is not None:
            return self._sat(sketch, "literal selection")
        return Verdict(UNKNOWN, self.mode, reason=reason, stats=self.stats)

    def saturated(self):
        return self._witness_or("term depth cap reached" if self.blocked else "saturated without a finite witness")

    def exhausted(self, reason):
        return self._witness_or(reason)


def saturate_fol(s: ClauseSet, cfg: StrategyConfig | None = None, observer=None) -> Verdict:
    """Decide (when possible) a first-order clause set.

    Tautologies and subsumed input clauses are set aside first; proof parents
    refer to the ids of ``s``.
    """
    for c in s:
        if c.is_empty:
            return Verdict(UNSAT, "fol", proof=Proof(steps=[], inputs={c.id: c}), reason="empty input clause")
    return FolSaturator(s, cfg, observer).run()
