"""Boundary-table mechanics for standard-extension contradiction separation.

An extension is a chain of participating clauses D1..Dk.  Every clause but the
last carries a main boundary literal x_i; every clause but the first carries a
secondary literal y_i whose instance is the complement of x_{i-1}.  The
negative part of D_i is its main and secondary literal plus any literal equal
to the complement of an earlier main literal (greedy absorption); everything
else is the positive part, and the union of positive parts is the derived
clause.

States are immutable.  Variables of each participation are renamed apart with
engine-wide fresh names, and a single accumulated substitution ``sigma`` is
applied to every participant, which realises the back-propagation of each new
unifier onto the earlier clauses.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import count

from .errors import (
    ContractViolation,
    ExtensionImpossible,
    ExtensionRejected,
    ResourceLimit,
    SoundnessError,
)
from .logic import (
    IDENTITY,
    Clause,
    Literal,
    Substitution,
    complement,
    renaming_for,
    unify_terms,
)

DEFAULT_MAX_WIDTH = 64
DEFAULT_MAX_TERM_DEPTH = 8
DEFAULT_PRODUCT_CAP = 10**6


def is_standard_contradiction(clauses, cap: int = DEFAULT_PRODUCT_CAP) -> bool:
    """True iff every one-literal-per-clause tuple holds a complementary pair.

    The product is enumerated depth first; a prefix that already contains a
    complementary pair closes its whole subtree.  More than ``cap`` visited
    nodes raises ResourceLimit.
    """
    fam = [list(c.lits) if isinstance(c, Clause) else list(c) for c in clauses]
    if not fam:
        raise ContractViolation("is_standard_contradiction needs at least one clause")
    if any(not lits for lits in fam):
        raise ContractViolation("is_standard_contradiction needs nonempty clauses")
    # small clauses first keeps the tree narrow near the root
    fam.sort(key=len)
    chosen: dict = {}
    budget = [cap]

    def walk(i):
        if i == len(fam):
            return False
        for lit in fam[i]:
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimit(f"standard-contradiction check exceeded {cap} nodes")
            if complement(lit) in chosen:
                continue
            chosen[lit] = chosen.get(lit, 0) + 1
            ok = walk(i + 1)
            chosen[lit] -= 1
            if not chosen[lit]:
                del chosen[lit]
            if not ok:
                return False
        return True

    return walk(0)


class FreshNames:
    """Counter producing variable names ``_1, _2, ...``; shared across states."""

    def __init__(self, start: int = 0):
        self._it = count(start + 1)

    def __call__(self, _j=None) -> str:
        return f"_{next(self._it)}"


@dataclass(frozen=True)
class Slot:
    source_id: object
    source: Clause
    binding: Substitution  # source variables -> renamed terms (includes any pre-substitution)
    base: Clause  # binding applied to source
    secondary: Literal | None  # literal of base, None for the first slot
    main: Literal | None  # literal of base, None until selected


@dataclass(frozen=True)
class BoundaryEntry:
    """Read-only view of one participant under the current substitution."""

    clause_index: int
    source_id: object
    clause: Clause
    extended_literal: Literal | None
    secondary_literal: Literal | None
    absorbed: frozenset
    minus: frozenset
    plus: frozenset


@dataclass(frozen=True)
class ExtensionState:
    slots: tuple
    sigma: Substitution = IDENTITY
    fresh: FreshNames = field(default_factory=FreshNames, compare=False)
    max_width: int = DEFAULT_MAX_WIDTH
    max_term_depth: int = DEFAULT_MAX_TERM_DEPTH

    def __len__(self):
        return len(self.slots)

    @property
    def source_ids(self) -> tuple:
        return tuple(s.source_id for s in self.slots)

    @property
    def clauses(self) -> tuple:
        """The instantiated participants D_i under the accumulated substitution."""
        return tuple(self.sigma.clause(s.base) for s in self.slots)

    def mains(self) -> list:
        return [None if s.main is None else self.sigma.literal(s.main) for s in self.slots]

    @property
    def pending(self) -> Literal | None:
        m = self.slots[-1].main
        return None if m is None else self.sigma.literal(m)

    def entries(self, closed: bool = False) -> list:
        """Partition every participant into its negative and positive part.

        With ``closed`` the last slot is treated as the final clause of the
        chain, so its main literal (if any) is ignored.
        """
        sigma = self.sigma
        mains = self.mains()
        if closed:
            mains[-1] = None
        out = []
        earlier = set()  # complements of the main literals before the previous slot
        for i, s in enumerate(self.slots):
            if i >= 2 and mains[i - 2] is not None:
                earlier.add(complement(mains[i - 2]))
            inst = sigma.clause(s.base)
            sec = None if s.secondary is None else sigma.literal(s.secondary)
            minus = set()
            if mains[i] is not None:
                minus.add(mains[i])
            if sec is not None:
                minus.add(sec)
            absorbed = frozenset(l for l in inst.lits if l in earlier and l not in minus)
            minus |= absorbed
            plus = frozenset(l for l in inst.lits if l not in minus)
            out.append(
                BoundaryEntry(
                    clause_index=i + 1,
                    source_id=s.source_id,
                    clause=inst,
                    extended_literal=mains[i],
                    secondary_literal=sec,
                    absorbed=absorbed,
                    minus=frozenset(minus),
                    plus=plus,
                )
            )
        return out

    def theta(self, i: int, then: Substitution = IDENTITY) -> Substitution:
        """Substitution taking slot i's source clause to its instantiated form."""
        s = self.slots[i]
        total = s.binding.compose(self.sigma.compose(then) if then else self.sigma)
        return total.restrict(s.source.vars())


@dataclass(frozen=True)
class CscResult:
    clause: Clause
    state: ExtensionState
    entries: tuple

    @property
    def source_ids(self):
        return self.state.source_ids


def _rename(clause: Clause, fresh, pre: Substitution | None):
    binding = pre if pre is not None else IDENTITY
    staged = binding.clause(clause)
    if staged.vars():
        ren = renaming_for(staged, fresh)
        binding = binding.compose(ren)
    else:
        ren = None
    return binding.restrict(clause.vars()), (ren.clause(staged) if ren else staged)


def _check_mains(state: ExtensionState):
    seen = {}
    for m in state.mains():
        if m is None:
            continue
        if m in seen or complement(m) in seen:
            raise ExtensionRejected(f"main boundary literal {m} repeats or clashes with an earlier one")
        seen[m] = True


def _check_depth(state: ExtensionState):
    cap = state.max_term_depth
    if cap is None:
        return
    for c in state.clauses:
        for lit in c.lits:
            if lit.depth() > cap:
                raise ExtensionRejected(f"term depth of {lit} exceeds {cap}")


def begin(
    d1: Clause,
    x1: Literal,
    source_id=None,
    pre: Substitution | None = None,
    fresh: FreshNames | None = None,
    max_width: int = DEFAULT_MAX_WIDTH,
    max_term_depth: int = DEFAULT_MAX_TERM_DEPTH,
) -> ExtensionState:
    """Start a chain with D1 = d1 and main literal x1."""
    if x1 not in d1.literals:
        raise ContractViolation(f"{x1} is not a literal of {d1}")
    fresh = fresh if fresh is not None else FreshNames()
    binding, base = _rename(d1, fresh, pre)
    slot = Slot(
        source_id=d1.id if source_id is None else source_id,
        source=d1,
        binding=binding,
        base=base,
        secondary=None,
        main=binding.literal(x1),
    )
    return ExtensionState(slots=(slot,), fresh=fresh, max_width=max_width, max_term_depth=max_term_depth)


def select(state: ExtensionState, x: Literal) -> ExtensionState:
    """Choose the main literal of the last participant.

    ``x`` may be given as a literal of the source clause or of its renamed base.
    """
    last = state.slots[-1]
    if last.main is not None:
        raise ContractViolation("main literal of the last participant already selected")
    if x in last.source.literals:
        m = last.binding.literal(x)
    elif x in last.base.literals:
        m = x
    else:
        raise ContractViolation(f"{x} is not a literal of {last.source}")
    if last.secondary is not None and state.sigma.literal(m) == state.sigma.literal(last.secondary):
        raise ContractViolation(f"{x} is the secondary literal of its clause")
    new = replace(state, slots=state.slots[:-1] + (replace(last, main=m),))
    _check_mains(new)
    return new


def extend(
    state: ExtensionState,
    next_clause: Clause,
    y: Literal,
    x: Literal | None = None,
    source_id=None,
    pre: Substitution | None = None,
) -> ExtensionState:
    """Append ``next_clause`` entering through its literal ``y``.

    The pending main literal of the last participant must unify with the
    complement of ``y``.  The unifier is applied to every participant.  When
    ``x`` is given it is then selected as the new participant's main literal.
    """
    pending = state.pending
    if pending is None:
        raise ContractViolation("no pending main literal; call select first")
    if y not in next_clause.literals:
        raise ContractViolation(f"{y} is not a literal of {next_clause}")
    if len(state.slots) >= state.max_width:
        raise ExtensionRejected(f"extension width cap {state.max_width} reached")
    binding, base = _rename(next_clause, state.fresh, pre)
    y_base = binding.literal(y)
    y_inst = state.sigma.literal(y_base)
    if y_inst.positive == pending.positive or y_inst.pred != pending.pred:
        raise ExtensionImpossible(f"{y} cannot meet {pending}")
    theta = unify_terms(zip(pending.args, y_inst.args)) if pending.args else IDENTITY
    if theta is None:
        raise ExtensionImpossible(f"{y} does not unify with the complement of {pending}")
    slot = Slot(
        source_id=next_clause.id if source_id is None else source_id,
        source=next_clause,
        binding=binding,
        base=base,
        secondary=y_base,
        main=None,
    )
    new = replace(state, slots=state.slots + (slot,), sigma=state.sigma.compose(theta))
    _check_depth(new)
    _check_mains(new)
    if new.sigma.literal(y_base) != complement(new.sigma.literal(new.slots[-2].main)):
        raise SoundnessError("boundary pair lost complementarity after substitution")
    if x is not None:
        new = select(new, x)
    return new


def close(state: ExtensionState, cap: int = DEFAULT_PRODUCT_CAP) -> CscResult:
    """Finish the chain and return the separated clause.

    The negative parts are re-verified to form a standard contradiction before
    anything is returned.
    """
    if len(state.slots) < 2:
        raise ContractViolation("close needs at least two participants")
    entries = state.entries(closed=True)
    for e in entries:
        if not e.minus:
            raise SoundnessError(f"empty negative part at position {e.clause_index}")
        if e.minus & e.plus or (e.minus | e.plus) != e.clause.literals:
            raise SoundnessError(f"bad partition at position {e.clause_index}")
    if not is_standard_contradiction([list(e.minus) for e in entries], cap=cap):
        raise SoundnessError("negative parts do not form a standard contradiction")
    lits = []
    for e in entries:
        lits.extend(l for l in e.clause.lits if l in e.plus)
    return CscResult(clause=Clause(lits, origin="derived"), state=state, entries=tuple(entries))


def clear_pending(state: ExtensionState) -> ExtensionState:
    last = state.slots[-1]
    if last.main is None:
        return state
    return replace(state, slots=state.slots[:-1] + (replace(last, main=None),))


def extension_options(state: ExtensionState, clause: Clause):
    """Literals of ``clause`` through which it could extend the chain now."""
    pending = state.pending
    out = []
    for y in clause.lits:
        if y.positive == pending.positive or y.pred != pending.pred or len(y.args) != len(pending.args):
            continue
        out.append(y)
    return out


def enumerate_ordered(clauses, max_width: int = DEFAULT_MAX_WIDTH, max_term_depth=DEFAULT_MAX_TERM_DEPTH):
    """Every closed extension that uses ``clauses`` exactly in the given order.

    Explores all choices of main and secondary literals (with most general
    unifiers).  Yields CscResult values; rejected or impossible branches are
    skipped.
    """
    clauses = [c if c.id is not None else c.with_id(i + 1) for i, c in enumerate(clauses)]
    if len(clauses) < 2:
        return
    fresh = FreshNames()

    def grow(state):
        i = len(state.slots)
        nxt = clauses[i]
        for y in nxt.lits:
            try:
                st = extend(state, nxt, y)
            except (ExtensionImpossible, ExtensionRejected):
                continue
            if i + 1 == len(clauses):
                yield close(st)
                continue
            for x in st.slots[-1].source.lits:
                try:
                    yield from grow(select(st, x))
                except (ContractViolation, ExtensionRejected):
                    continue

    for x1 in clauses[0].lits:
        st = begin(clauses[0], x1, fresh=fresh, max_width=max_width, max_term_depth=max_term_depth)
        yield from grow(st)
