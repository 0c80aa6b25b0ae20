"""Saturation loop shared by the propositional and first-order engines.

Each round grows extension chains depth first from a rotating start clause,
closing every prefix of length two or more.  The empty clause ends the run;
otherwise the best few new clauses are kept.  A round that adds nothing falls
back to exhaustive two-clause extension (binary resolution); if that adds
nothing either, the clause set is saturated and the subclass decides.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .config import StrategyConfig
from .errors import ContractViolation, ExtensionImpossible, ExtensionRejected
from .kernel import CscResult, FreshNames, begin, close, extend, select
from .logic import Clause, ClauseSet, Substitution, complement, is_tautology, renaming_for, subsumes
from .proof import UNKNOWN, UNSAT, DeductionStep, Proof, ProofEntry, Verdict


class _Stop(Exception):
    """Unwinds the extension search."""


class _Budget(_Stop):
    pass


class _Timeout(_Stop):
    pass


class _Found(_Stop):
    def __init__(self, verdict):
        self.verdict = verdict


@dataclass
class Record:
    id: int
    clause: Clause
    origin: str  # "input" or "derived"
    step: DeductionStep | None = None
    active: bool = True


def step_from_result(res: CscResult, new_id: int):
    """Derived clause and proof step for a closed extension.

    Variables of the derived clause are renamed to ``X<id>_<j>`` and the same
    renaming is folded into every participant's substitution.
    """
    c = res.clause
    ren = renaming_for(c, lambda j: f"X{new_id}_{j}") if c.vars() else Substitution()
    state = res.state
    entries = []
    for i, (slot, e) in enumerate(zip(state.slots, res.entries)):
        entries.append(
            ProofEntry(
                parent=slot.source_id,
                subst=state.theta(i, ren),
                main=None if e.extended_literal is None else ren.literal(e.extended_literal),
                secondary=None if e.secondary_literal is None else ren.literal(e.secondary_literal),
                minus=tuple(ren.literal(l) for l in e.clause.lits if l in e.minus),
            )
        )
    clause = Clause([ren.literal(l) for l in c.lits], id=new_id, origin="derived")
    return clause, DeductionStep(id=new_id, csc=clause, entries=tuple(entries))


class Saturator:
    mode = "prop"

    def __init__(self, clauses: ClauseSet, cfg: StrategyConfig | None = None, observer: Callable | None = None):
        self.cfg = cfg or StrategyConfig()
        self.observer = observer
        self.records: dict[int, Record] = {}
        self.input_ids: list[int] = []
        for c in clauses:
            self.records[c.id] = Record(c.id, c, "input")
            self.input_ids.append(c.id)
        self.next_id = max(self.records, default=0) + 1
        self.fresh = FreshNames()
        self.rotation = 0
        self.rng = random.Random(self.cfg.seed)
        self.deadline = None if self.cfg.time_limit is None else time.monotonic() + self.cfg.time_limit
        self.blocked = False  # some extension was refused by the depth cap
        self.stats = {"rounds": 0, "binary_rounds": 0, "closes": 0, "derived": 0, "nodes": 0}
        self._index = {}
        self._nodes = 0

    # ------------------------------------------------------------------ hooks

    def clause_key(self, rec: Record):
        c = rec.clause
        return (len(c), rec.id)

    def literal_key(self, lit):
        return (0,)

    def simplify(self) -> Verdict | None:
        return None

    def chain_sat(self, res: CscResult) -> Verdict | None:
        return None

    def saturated(self) -> Verdict:
        return Verdict(UNKNOWN, self.mode, reason="saturated", stats=self.stats)

    def exhausted(self, reason: str) -> Verdict:
        return Verdict(UNKNOWN, self.mode, reason=reason, stats=self.stats)

    def factors(self, clause: Clause) -> list:
        return [None]

    # ---------------------------------------------------------------- helpers

    def active_records(self) -> list[Record]:
        return [r for r in self.records.values() if r.active]

    def active_inputs(self) -> set:
        return {i for i in self.input_ids if self.records[i].active}

    def _time_up(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def _ordered(self, recs):
        keyed = [(self.clause_key(r), self.rng.random() if self.cfg.seed else 0.0, r) for r in recs]
        keyed.sort(key=lambda t: (t[0], t[1]))
        return [r for _, _, r in keyed]

    def _build_index(self):
        idx = {}
        for r in self._ordered(self.active_records()):
            seen = set()
            for lit in r.clause.lits:
                key = (lit.positive, lit.pred, len(lit.args))
                if key in seen:
                    continue
                seen.add(key)
                idx.setdefault(key, []).append(r)
        self._index = idx

    def _partners(self, pending):
        return self._index.get((not pending.positive, pending.pred, len(pending.args)), ())

    # ----------------------------------------------------------------- steps

    def _add_derived(self, res: CscResult) -> Record:
        nid = self.next_id
        self.next_id += 1
        clause, step = step_from_result(res, nid)
        rec = Record(nid, clause, "derived", step)
        self.records[nid] = rec
        self.stats["derived"] += 1
        return rec

    def proof_of(self, rec: Record) -> Proof:
        needed = set()
        stack = [rec.id]
        while stack:
            cid = stack.pop()
            if cid in needed:
                continue
            needed.add(cid)
            r = self.records[cid]
            if r.step is not None:
                stack.extend(r.step.parents)
        steps = [self.records[i].step for i in sorted(needed) if self.records[i].step is not None]
        inputs = {i: self.records[i].clause for i in sorted(needed) if self.records[i].origin == "input"}
        return Proof(steps=steps, inputs=inputs)

    def _refute(self, res: CscResult) -> Verdict:
        rec = self._add_derived(res)
        return Verdict(UNSAT, self.mode, proof=self.proof_of(rec), stats=self.stats)

    # ---------------------------------------------------------------- search

    def _is_new(self, clause: Clause) -> bool:
        if is_tautology(clause):
            return False
        for r in self.records.values():
            if r.active and subsumes(r.clause, clause):
                return False
        return True

    def _insert(self, res: CscResult) -> bool:
        if not self._is_new(res.clause):
            return False
        rec = self._add_derived(res)
        for r in self.records.values():
            if r.active and r.origin == "derived" and r.id != rec.id and subsumes(rec.clause, r.clause):
                r.active = False
        return True

    def _close(self, state, candidates):
        res = close(state)
        self.stats["closes"] += 1
        if self.observer is not None:
            self.observer(res)
        if res.clause.is_empty:
            raise _Found(self._refute(res))
        if res.clause not in candidates and not is_tautology(res.clause):
            candidates[res.clause] = res
        if set(res.source_ids) >= self.active_inputs():
            v = self.chain_sat(res)
            if v is not None:
                raise _Found(v)
        return res

    def _tick(self):
        self._nodes += 1
        self.stats["nodes"] += 1
        if self._nodes > self._budget:
            raise _Budget()
        if not self._nodes & 255 and self._time_up():
            raise _Timeout()

    def _dfs(self, state, candidates, width):
        self._tick()
        if len(state.slots) >= 2:
            res = self._close(state, candidates)
            # positive parts of all but the last participant are final
            fixed = set()
            for e in res.entries[:-1]:
                fixed |= e.plus
            if any(complement(l) in fixed for l in fixed):
                return
            if len(state.slots) >= width:
                return
            last = state.slots[-1]
            sec = state.sigma.literal(last.secondary)
            options = []
            seen = set()
            for x in last.base.lits:
                inst = state.sigma.literal(x)
                if inst == sec or inst in seen:
                    continue
                seen.add(inst)
                options.append((self.literal_key(inst), len(options), x))
            options.sort()
            for _, _, x in options:
                try:
                    st = select(state, x)
                except (ContractViolation, ExtensionRejected):
                    continue
                self._grow(st, candidates, width)
        else:
            self._grow(state, candidates, width)

    def _grow(self, state, candidates, width):
        pending = state.pending
        used = set(state.source_ids)
        partners = self._partners(pending)
        ordered = [r for r in partners if r.id not in used] + [r for r in partners if r.id in used]
        for rec in ordered:
            for y in rec.clause.lits:
                if y.positive == pending.positive or y.pred != pending.pred:
                    continue
                try:
                    st = extend(state, rec.clause, y, source_id=rec.id)
                except ExtensionImpossible:
                    continue
                except ExtensionRejected as exc:
                    if "depth" in str(exc):
                        self.blocked = True
                    continue
                self._dfs(st, candidates, width)

    def _widths(self, width):
        """Chain-length limits tried in turn: short chains first, unless the strategy is "wide"."""
        if self.cfg.strategy == "wide":
            return [width]
        out = []
        w = 3
        while w < width:
            out.append(w)
            w *= 2
        return out + [width]

    def _explore(self, rec: Record, candidates, width, budget):
        lits = sorted(rec.clause.lits, key=lambda l: (self.literal_key(l), str(l)))
        self._nodes = 0
        self._budget = budget
        try:
            for w in self._widths(width):
                for x1 in lits:
                    st = begin(
                        rec.clause,
                        x1,
                        source_id=rec.id,
                        fresh=self.fresh,
                        max_width=self.cfg.max_width,
                        max_term_depth=self.cfg.max_term_depth,
                    )
                    self._dfs(st, candidates, w)
        except _Budget:
            pass

    def se_round(self):
        """One extension round; returns (verdict or None, number of clauses added)."""
        self._build_index()
        starts = self._ordered(self.active_records())
        if not starts:
            return None, 0
        keep = self.cfg.effective_keep
        width = self.cfg.effective_width
        candidates: dict = {}
        n = len(starts)
        offset = self.rotation % n if self.cfg.start_rotation else 0
        for j in range(n):
            self._explore(starts[(offset + j) % n], candidates, width, self.cfg.effective_node_budget)
            if len(candidates) >= keep * 4:
                break
        self.rotation += 1
        added = 0
        for clause, res in sorted(candidates.items(), key=lambda kv: (len(kv[0]), self._weight(kv[0]), str(kv[0]))):
            if added >= keep:
                break
            if self._insert(res):
                added += 1
        return None, added

    @staticmethod
    def _weight(c: Clause) -> int:
        return sum(1 + sum(len(str(a)) for a in l.args) for l in c.lits)

    def binary_round(self):
        """Every two-clause extension over the active set; all new results are kept."""
        self._build_index()
        recs = self._ordered(self.active_records())
        results = []
        for r1 in recs:
            for pre1 in self.factors(r1.clause):
                for x1 in r1.clause.lits:
                    st0 = begin(r1.clause, x1, source_id=r1.id, pre=pre1, fresh=self.fresh,
                                max_width=self.cfg.max_width, max_term_depth=self.cfg.max_term_depth)
                    for r2 in self._partners(st0.pending):
                        for pre2 in self.factors(r2.clause):
                            for y in r2.clause.lits:
                                if y.positive == x1.positive or y.pred != x1.pred:
                                    continue
                                try:
                                    st = extend(st0, r2.clause, y, source_id=r2.id, pre=pre2)
                                except ExtensionImpossible:
                                    continue
                                except ExtensionRejected:
                                    self.blocked = True
                                    continue
                                res = close(st)
                                self.stats["closes"] += 1
                                if self.observer is not None:
                                    self.observer(res)
                                if res.clause.is_empty:
                                    return self._refute(res), 0
                                results.append(res)
                if self._time_up():
                    raise _Timeout()
        added = 0
        results.sort(key=lambda r: (len(r.clause), self._weight(r.clause)))
        for res in results:
            if self._insert(res):
                added += 1
                if len(self.records) > self.cfg.max_clauses:
                    break
        return None, added

    # ------------------------------------------------------------------- run

    def run(self) -> Verdict:
        try:
            return self._run()
        except _Found as f:
            return f.verdict
        except _Timeout:
            return self.exhausted("time limit")

    def _run(self) -> Verdict:
        for _ in range(self.cfg.max_steps):
            if self._time_up():
                return self.exhausted("time limit")
            v = self.simplify()
            if v is not None:
                return v
            self.stats["rounds"] += 1
            v, added = self.se_round()
            if v is not None:
                return v
            if added:
                continue
            if not self.cfg.fallback_binary:
                return self.exhausted("no new clauses and binary fallback disabled")
            self.stats["binary_rounds"] += 1
            v, added = self.binary_round()
            if v is not None:
                return v
            if added:
                continue
            if len(self.records) > self.cfg.max_clauses:
                return self.exhausted("clause limit")
            return self.saturated()
        return self.exhausted("step limit")
