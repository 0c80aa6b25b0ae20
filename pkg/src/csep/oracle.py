"""Independent verification: truth tables, ground entailment, proof replay, linear chains.

Nothing here calls into the extension kernel or the engines; only the syntax
layer is shared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ContractViolation, ResourceLimit, SoundnessError
from .logic import (
    Clause,
    ClauseSet,
    Fn,
    Literal,
    Substitution,
    Var,
    complement,
    variant,
)

TRUTH_TABLE_CAP = 24


# --------------------------------------------------------------------------
# truth tables


@dataclass(frozen=True)
class TruthTableReport:
    satisfiable: bool
    model: frozenset | None
    variable_count: int


def _atoms_of(s):
    atoms = set()
    for c in s:
        for lit in c.lits:
            if lit.args:
                raise ContractViolation(f"truth tables need propositional clauses, got {lit}")
            atoms.add(lit.pred)
    return sorted(atoms)


def truth_table_sat(s, cap: int = TRUTH_TABLE_CAP) -> TruthTableReport:
    """Exhaustive satisfiability over all 2^n assignments (bitmask evaluation)."""
    atoms = _atoms_of(s)
    n = len(atoms)
    if n > cap:
        raise ResourceLimit(f"{n} variables exceeds the truth-table cap of {cap}")
    bit = {a: 1 << i for i, a in enumerate(atoms)}
    masks = []
    for c in s:
        pos = neg = 0
        for lit in c.lits:
            if lit.positive:
                pos |= bit[lit.pred]
            else:
                neg |= bit[lit.pred]
        masks.append((pos, neg))
    full = (1 << n) - 1
    for a in range(1 << n):
        na = full & ~a
        if all((a & pos) or (na & neg) for pos, neg in masks):
            model = frozenset(Literal(bool(a & bit[x]), x) for x in atoms)
            return TruthTableReport(True, model, n)
    return TruthTableReport(False, None, n)


def truth_table_sat_reversed(s, cap: int = TRUTH_TABLE_CAP) -> TruthTableReport:
    """Second enumeration: assignments in descending order, evaluated literal by literal."""
    atoms = _atoms_of(s)
    n = len(atoms)
    if n > cap:
        raise ResourceLimit(f"{n} variables exceeds the truth-table cap of {cap}")
    clauses = [list(c.lits) for c in s]
    for values in itertools.product((True, False), repeat=n):
        env = dict(zip(atoms, values))
        if all(any(env[l.pred] == l.positive for l in c) for c in clauses):
            return TruthTableReport(True, frozenset(Literal(v, a) for a, v in env.items()), n)
    return TruthTableReport(False, None, n)


def evaluates_true(model, s) -> bool:
    m = set(model)
    if any(complement(l) in m for l in m):
        return False
    return all(any(l in m for l in c.lits) for c in s)


# --------------------------------------------------------------------------
# ground entailment


def _dpll_sat(clauses) -> bool:
    """Plain DPLL over ground clauses given as sets of (atom, polarity)."""
    clauses = [frozenset(c) for c in clauses]
    return _dpll(clauses, {})


def _dpll(clauses, env):
    while True:
        unit = None
        reduced = []
        for c in clauses:
            live = []
            sat = False
            for atom, pol in c:
                v = env.get(atom)
                if v is None:
                    live.append((atom, pol))
                elif v == pol:
                    sat = True
                    break
            if sat:
                continue
            if not live:
                return False
            if len(live) == 1 and unit is None:
                unit = live[0]
            reduced.append(live)
        if not reduced:
            return True
        if unit is None:
            break
        env = dict(env)
        env[unit[0]] = unit[1]
        clauses = reduced
    atom = reduced[0][0][0]
    for value in (True, False):
        env2 = dict(env)
        env2[atom] = value
        if _dpll(reduced, env2):
            return True
    return False


def herbrand_terms(constants, functions, depth: int) -> list:
    """Ground terms up to ``depth`` nested function applications."""
    level = [Fn(c) for c in sorted(constants)]
    terms = list(level)
    for _ in range(depth):
        new = []
        for name, arity in sorted(functions.items()):
            for args in itertools.product(terms, repeat=arity):
                t = Fn(name, args)
                new.append(t)
        seen = set(terms)
        terms.extend(t for t in new if t not in seen)
    return terms


def _ground_instances(c: Clause, universe, cap_counter):
    vs = sorted(c.vars(), key=lambda v: v.name)
    if not vs:
        yield c
        return
    for combo in itertools.product(universe, repeat=len(vs)):
        cap_counter[0] -= len(c)
        if cap_counter[0] < 0:
            raise ResourceLimit("ground instantiation exceeds the literal cap")
        yield Substitution(dict(zip(vs, combo))).clause(c)


def _symbols(clauses):
    consts, funcs = set(), {}

    def visit(t):
        if isinstance(t, Var):
            return
        if t.args:
            funcs[t.name] = len(t.args)
            for a in t.args:
                visit(a)
        else:
            consts.add(t.name)

    for c in clauses:
        for l in c.lits:
            for a in l.args:
                visit(a)
    return consts, funcs


def ground_entails(parents, csc: Clause, depth: int = 2, cap: int = 10**4, fresh: str = "c0") -> bool:
    """Finite-instantiation entailment check.

    Parents are grounded over the Herbrand terms of the mentioned constants
    plus one fresh constant, nested up to ``depth``.  Every instance of the
    conclusion with variables mapped to constants must follow propositionally
    from those ground parent instances.
    """
    parents = list(parents)
    consts, funcs = _symbols(parents + [csc])
    while fresh in consts:
        fresh += "_"
    consts = set(consts) | {fresh}
    universe = herbrand_terms(consts, funcs, depth)
    budget = [cap]
    ground = []
    for p in parents:
        for inst in _ground_instances(p, universe, budget):
            ground.append({(l.atom_key, l.positive) for l in inst.lits})
    const_terms = [Fn(c) for c in sorted(consts)]
    for inst in _ground_instances(csc, const_terms, budget):
        negated = [{(l.atom_key, not l.positive)} for l in inst.lits]
        if _dpll_sat(ground + negated):
            return False
    return True


# --------------------------------------------------------------------------
# proof checking


@dataclass
class CheckReport:
    ok: bool
    message: str = ""
    step: int | None = None

    def __bool__(self):
        return self.ok


def _has_consistent_pick(family) -> bool:
    """True when one literal can be picked per clause with no complementary pair."""
    order = sorted(range(len(family)), key=lambda i: len(family[i]))
    picked: dict = {}

    def go(j):
        if j == len(order):
            return True
        for lit in family[order[j]]:
            pol = picked.get(lit.atom_key)
            if pol is not None and pol != lit.positive:
                continue
            fresh_atom = pol is None
            if fresh_atom:
                picked[lit.atom_key] = lit.positive
            if go(j + 1):
                return True
            if fresh_atom:
                del picked[lit.atom_key]
        return False

    return go(0)


def _check_step(step, known) -> str | None:
    entries = step.entries
    k = len(entries)
    if k < 2:
        return "a step needs at least two participants"
    mains = []
    family = []
    plus_union = set()
    for i, e in enumerate(entries):
        parent = known.get(e.parent)
        if parent is None:
            return f"participant {i + 1} refers to unknown clause {e.parent}"
        extra = set(e.subst) - parent.vars()
        if extra:
            return f"participant {i + 1} binds variables {sorted(v.name for v in extra)} absent from its parent"
        inst = e.subst.clause(parent)
        minus = set(e.minus)
        if not minus <= inst.literals:
            return f"participant {i + 1}: negative part not contained in the instantiated parent"
        last = i == k - 1
        if (e.main is None) != last:
            return f"participant {i + 1}: main literal {'missing' if not last else 'not allowed on the last clause'}"
        if (e.secondary is None) != (i == 0):
            return f"participant {i + 1}: secondary literal {'missing' if i else 'not allowed on the first clause'}"
        core = set()
        if e.main is not None:
            core.add(e.main)
        if e.secondary is not None:
            core.add(e.secondary)
            if e.secondary != complement(mains[-1]):
                return f"participant {i + 1}: secondary literal is not the complement of the previous main literal"
        if e.main is not None and e.main == e.secondary:
            return f"participant {i + 1}: main literal equals its secondary literal"
        if not core <= minus:
            return f"participant {i + 1}: boundary literals missing from the negative part"
        allowed = {complement(m) for m in mains[: max(i - 1, 0)]}
        if not (minus - core) <= allowed:
            return f"participant {i + 1}: negative part holds literals outside the extension shape"
        mains.append(e.main)
        family.append(list(minus))
        plus_union |= inst.literals - minus
    if _has_consistent_pick(family):
        return "negative parts are not a standard contradiction"
    if plus_union != set(step.csc.literals):
        return "derived clause differs from the union of positive parts"
    return None


def check_proof(proof, s: ClauseSet, require_refutation: bool = True) -> CheckReport:
    """Replay every step of ``proof`` against the problem ``s``."""
    known = {c.id: c for c in s}
    for cid, c in proof.inputs.items():
        if cid not in known:
            return CheckReport(False, f"input {cid} is not a clause of the problem")
        if not variant(known[cid], c):
            return CheckReport(False, f"input {cid} differs from the problem clause")
        known[cid] = c
    if not proof.steps:
        if require_refutation and any(c.is_empty for c in proof.inputs.values()):
            return CheckReport(True, "empty input clause")
        return CheckReport(False, "proof has no steps")
    for st in proof.steps:
        if st.id in known:
            return CheckReport(False, f"step id {st.id} reuses an existing clause id", st.id)
        msg = _check_step(st, known)
        if msg is not None:
            return CheckReport(False, f"step {st.id}: {msg}", st.id)
        known[st.id] = st.csc
    if require_refutation and not proof.steps[-1].csc.is_empty:
        return CheckReport(False, "final step is not the empty clause", proof.steps[-1].id)
    return CheckReport(True, f"{len(proof.steps)} steps verified")


# --------------------------------------------------------------------------
# linear chains


@dataclass
class LinearChain:
    steps: list = field(default_factory=list)  # (resolved literal, resolvent)
    top: Clause | None = None

    @property
    def final(self) -> Clause:
        return self.steps[-1][1] if self.steps else self.top


def linear_chain(clauses, mains) -> LinearChain:
    """Resolve D_k with D_{k-1}, then D_{k-2}, ... on the recorded main literals."""
    clauses = [c if isinstance(c, Clause) else Clause(c) for c in clauses]
    if len(mains) != len(clauses) - 1:
        raise ContractViolation("need one main literal per clause except the last")
    r = set(clauses[-1].lits)
    chain = LinearChain(top=clauses[-1])
    for i in range(len(clauses) - 2, -1, -1):
        x = mains[i]
        if complement(x) not in r or x not in clauses[i].literals:
            raise SoundnessError(f"no binary resolution on {x} at position {i + 1}")
        r = (r - {complement(x)}) | (set(clauses[i].lits) - {x})
        chain.steps.append((x, Clause(sorted(r, key=str))))
    return chain


def linear_chain_of(state) -> LinearChain:
    """Linear chain of a closed extension, given as a CscResult or its state."""
    st = getattr(state, "state", state)
    entries = getattr(state, "entries", None) or st.entries(closed=True)
    return linear_chain([e.clause for e in entries], [e.extended_literal for e in entries[:-1]])


# --------------------------------------------------------------------------
# mutations


def proof_mutants(proof, s=None):
    """Single-point corruptions of a proof: (description, mutated proof) pairs."""
    from .proof import DeductionStep, Proof, ProofEntry

    def with_step(i, step):
        steps = list(proof.steps)
        steps[i] = step
        return Proof(steps=steps, inputs=dict(proof.inputs))

    def with_entry(i, j, entry):
        st = proof.steps[i]
        entries = list(st.entries)
        entries[j] = entry
        return with_step(i, DeductionStep(st.id, st.csc, tuple(entries)))

    for i, st in enumerate(proof.steps):
        lits = list(st.csc.lits)
        for j, l in enumerate(lits):
            flipped = lits[:j] + [complement(l)] + lits[j + 1 :]
            yield f"step {st.id}: flip derived literal {l}", with_step(i, DeductionStep(st.id, Clause(flipped, id=st.id), st.entries))
            dropped = lits[:j] + lits[j + 1 :]
            yield f"step {st.id}: drop derived literal {l}", with_step(i, DeductionStep(st.id, Clause(dropped, id=st.id), st.entries))
        extra = Literal(True, "zz_extra")
        yield f"step {st.id}: add a derived literal", with_step(i, DeductionStep(st.id, Clause(lits + [extra], id=st.id), st.entries))
        for j, e in enumerate(st.entries):
            if e.main is not None:
                m2 = ProofEntry(e.parent, e.subst, complement(e.main), e.secondary, e.minus)
                yield f"step {st.id}: flip main literal of participant {j + 1}", with_entry(i, j, m2)
            if e.secondary is not None:
                m2 = ProofEntry(e.parent, e.subst, e.main, complement(e.secondary), e.minus)
                yield f"step {st.id}: flip secondary literal of participant {j + 1}", with_entry(i, j, m2)
            for v in sorted(e.subst, key=lambda v: v.name):
                bad = Substitution({**dict(e.subst.items()), v: Fn("zz_fresh")})
                yield f"step {st.id}: rebind {v} in participant {j + 1}", with_entry(
                    i, j, ProofEntry(e.parent, bad, e.main, e.secondary, e.minus)
                )
            if s is not None and e.parent in s.ids():
                here = s.by_id(e.parent)
                others = [c.id for c in s if c != here]
                if others:
                    yield f"step {st.id}: swap parent of participant {j + 1}", with_entry(
                        i, j, ProofEntry(others[0], e.subst, e.main, e.secondary, e.minus)
                    )
