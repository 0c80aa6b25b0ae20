"""Clause syntax, substitutions, unification and elementary clause predicates.

Propositional atoms are the 0-ary case of first-order atoms, so a single set of
types serves both engines.  All values are immutable after construction.
"""

from __future__ import annotations

from itertools import count
from typing import Iterable, Iterator, Mapping

from .errors import ArityError, ContractViolation, OccursCheckError


class Var:
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("V", name))

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class Fn:
    """Function application; constants are the ``args == ()`` case."""

    __slots__ = ("name", "args", "_hash", "ground")

    def __init__(self, name: str, args: Iterable[Term] = ()):
        self.name = name
        self.args = tuple(args)
        self._hash = hash(("F", name, self.args))
        self.ground = all(a.ground if isinstance(a, Fn) else False for a in self.args)

    def __eq__(self, other):
        return (
            isinstance(other, Fn)
            and other._hash == self._hash
            and other.name == self.name
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"Const({self.name!r})"
        return f"Fn({self.name!r}, {list(self.args)!r})"

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


Term = "Var | Fn"


def Const(name: str) -> Fn:
    return Fn(name, ())


def term_vars(t, acc=None) -> set:
    if acc is None:
        acc = set()
    if isinstance(t, Var):
        acc.add(t)
    elif not t.ground:
        for a in t.args:
            term_vars(a, acc)
    return acc


def occurs(v: Var, t) -> bool:
    if isinstance(t, Var):
        return t == v
    if t.ground:
        return False
    return any(occurs(v, a) for a in t.args)


def term_depth(t) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


class Literal:
    __slots__ = ("positive", "pred", "args", "_hash")

    def __init__(self, positive: bool, pred: str, args: Iterable = ()):
        self.positive = bool(positive)
        self.pred = pred
        self.args = tuple(args)
        self._hash = hash((self.positive, pred, self.args))

    def __eq__(self, other):
        return (
            isinstance(other, Literal)
            and other._hash == self._hash
            and other.positive == self.positive
            and other.pred == self.pred
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __neg__(self):
        return Literal(not self.positive, self.pred, self.args)

    @property
    def atom_key(self):
        return (self.pred, self.args)

    @property
    def ground(self) -> bool:
        return all(isinstance(a, Fn) and a.ground for a in self.args)

    def vars(self) -> set:
        acc = set()
        for a in self.args:
            term_vars(a, acc)
        return acc

    def depth(self) -> int:
        return max((term_depth(a) for a in self.args), default=0)

    def sort_key(self):
        return (self.pred, str(self), not self.positive)

    def __repr__(self):
        return f"Literal({str(self)!r})"

    def __str__(self):
        body = self.pred
        if self.args:
            body += "(" + ",".join(str(a) for a in self.args) + ")"
        return body if self.positive else "~" + body


def Pos(pred: str, *args) -> Literal:
    return Literal(True, pred, args)


def Neg(pred: str, *args) -> Literal:
    return Literal(False, pred, args)


def complement(lit: Literal) -> Literal:
    return Literal(not lit.positive, lit.pred, lit.args)


def complementary(a: Literal, b: Literal) -> bool:
    return a.positive != b.positive and a.pred == b.pred and a.args == b.args


class Clause:
    """A duplicate-free disjunction of literals.

    ``lits`` keeps first-occurrence order so that literal positions (used by the
    extension kernel and by serialization) are stable; equality and hashing use
    the literal *set* only, ignoring ``id`` and ``origin``.
    """

    __slots__ = ("lits", "literals", "id", "origin", "_hash")

    def __init__(self, lits: Iterable[Literal] = (), id=None, origin="input"):
        seen = {}
        for lit in lits:
            if lit not in seen:
                seen[lit] = None
        self.lits = tuple(seen)
        self.literals = frozenset(self.lits)
        self.id = id
        self.origin = origin
        self._hash = hash(self.literals)

    def __eq__(self, other):
        return isinstance(other, Clause) and other.literals == self.literals

    def __hash__(self):
        return self._hash

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.lits)

    def __len__(self):
        return len(self.lits)

    def __contains__(self, lit):
        return lit in self.literals

    @property
    def is_empty(self) -> bool:
        return not self.lits

    def vars(self) -> set:
        acc = set()
        for lit in self.lits:
            for a in lit.args:
                term_vars(a, acc)
        return acc

    @property
    def ground(self) -> bool:
        return all(lit.ground for lit in self.lits)

    def with_id(self, id, origin=None) -> "Clause":
        return Clause(self.lits, id=id, origin=self.origin if origin is None else origin)

    def __repr__(self):
        tag = "" if self.id is None else f"#{self.id} "
        return f"Clause({tag}{str(self)!r})"

    def __str__(self):
        if not self.lits:
            return "$false"
        return " | ".join(str(lit) for lit in self.lits)


EMPTY = Clause(())


class SymbolTable:
    """Predicate and function arities, fixed on first use."""

    def __init__(self):
        self.predicates: dict[str, int] = {}
        self.functions: dict[str, int] = {}

    def note_literal(self, lit: Literal):
        self._note(self.predicates, lit.pred, len(lit.args), "predicate")
        for a in lit.args:
            self.note_term(a)

    def note_term(self, t):
        if isinstance(t, Var):
            return
        self._note(self.functions, t.name, len(t.args), "function")
        for a in t.args:
            self.note_term(a)

    @staticmethod
    def _note(table, name, arity, kind):
        known = table.setdefault(name, arity)
        if known != arity:
            raise ArityError(f"{kind} {name!r} used with arity {arity}, previously {known}")

    @property
    def constants(self) -> list[str]:
        return sorted(n for n, a in self.functions.items() if a == 0)

    @property
    def propositional(self) -> bool:
        return not self.functions and all(a == 0 for a in self.predicates.values())


class ClauseSet:
    """An ordered collection of clauses with a consistent symbol table.

    Clauses lacking an id are numbered 1.. in order.
    """

    def __init__(self, clauses: Iterable[Clause] = ()):
        out = []
        used = set()
        for pos, c in enumerate(clauses, start=1):
            if c.id is None:
                c = c.with_id(pos)
            if c.id in used:
                raise ContractViolation(f"duplicate clause id {c.id}")
            used.add(c.id)
            out.append(c)
        self.clauses = tuple(out)
        self.symbols = SymbolTable()
        for c in self.clauses:
            for lit in c.lits:
                self.symbols.note_literal(lit)
        self._by_id = {c.id: c for c in self.clauses}

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __getitem__(self, idx):
        return self.clauses[idx]

    def by_id(self, cid) -> Clause:
        return self._by_id[cid]

    def ids(self) -> list:
        return [c.id for c in self.clauses]

    @property
    def propositional(self) -> bool:
        return self.symbols.propositional

    def atoms(self) -> list:
        """Distinct atoms (predicate, args) in first-occurrence order."""
        seen = {}
        for c in self.clauses:
            for lit in c.lits:
                seen.setdefault(lit.atom_key, None)
        return list(seen)

    def __repr__(self):
        return f"ClauseSet({[str(c) for c in self.clauses]})"


# --------------------------------------------------------------------------
# Substitutions


class Substitution(Mapping):
    """Finite map Var -> term, applied simultaneously.

    Identity bindings are dropped; a binding whose term contains its own
    variable is rejected.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings: Mapping | Iterable = ()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        m = {}
        for v, t in items:
            if not isinstance(v, Var):
                raise ContractViolation(f"substitution domain must be variables, got {v!r}")
            if t == v:
                continue
            if occurs(v, t):
                raise OccursCheckError(f"{v} occurs in {t}")
            m[v] = t
        self._map = m
        self._hash = None

    def __getitem__(self, v):
        return self._map[v]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{t}/{v}" for v, t in sorted(self._map.items(), key=lambda kv: kv[0].name))
        return "{" + inner + "}"

    def term(self, t):
        if not self._map:
            return t
        if isinstance(t, Var):
            return self._map.get(t, t)
        if t.ground:
            return t
        return Fn(t.name, [self.term(a) for a in t.args])

    def literal(self, lit: Literal) -> Literal:
        if not self._map or not lit.args:
            return lit
        return Literal(lit.positive, lit.pred, [self.term(a) for a in lit.args])

    def clause(self, c: Clause) -> Clause:
        if not self._map:
            return c
        return Clause([self.literal(lit) for lit in c.lits], id=c.id, origin=c.origin)

    def compose(self, then: "Substitution") -> "Substitution":
        """The substitution equal to applying ``self`` and then ``then``."""
        if not then._map:
            return self
        if not self._map:
            return then
        m = {v: then.term(t) for v, t in self._map.items()}
        for v, t in then._map.items():
            if v not in self._map:
                m[v] = t
        return Substitution(m)

    def restrict(self, variables: Iterable[Var]) -> "Substitution":
        keep = set(variables)
        return Substitution({v: t for v, t in self._map.items() if v in keep})

    def is_idempotent(self) -> bool:
        dom = set(self._map)
        return not any(term_vars(t) & dom for t in self._map.values())


IDENTITY = Substitution()


def apply(s: Substitution, c):
    """Apply ``s`` to a term, literal or clause (clauses re-merge duplicates)."""
    if isinstance(c, Clause):
        return s.clause(c)
    if isinstance(c, Literal):
        return s.literal(c)
    return s.term(c)


def compose(s1: Substitution, s2: Substitution) -> Substitution:
    return s1.compose(s2)


# --------------------------------------------------------------------------
# Unification


def unify_terms(pairs, subst: Substitution | None = None) -> Substitution | None:
    """Robinson unification with occurs check; returns an idempotent MGU or None."""
    sigma = dict(subst._map) if subst else {}
    stack = list(pairs)

    def walk(t):
        while isinstance(t, Var) and t in sigma:
            t = sigma[t]
        return t

    def resolve(t):
        t = walk(t)
        if isinstance(t, Var) or t.ground:
            return t
        return Fn(t.name, [resolve(a) for a in t.args])

    def occurs_walk(v, t):
        t = walk(t)
        if isinstance(t, Var):
            return t == v
        if t.ground:
            return False
        return any(occurs_walk(v, a) for a in t.args)

    while stack:
        a, b = stack.pop()
        a = walk(a)
        b = walk(b)
        if a == b:
            continue
        if isinstance(a, Var):
            if occurs_walk(a, b):
                return None
            sigma[a] = b
        elif isinstance(b, Var):
            if occurs_walk(b, a):
                return None
            sigma[b] = a
        else:
            if a.name != b.name or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
    return Substitution({v: resolve(t) for v, t in sigma.items()})


def unify_literals(l1: Literal, l2: Literal) -> Substitution | None:
    """MGU making ``l1`` and ``l2`` identical (same polarity required)."""
    if l1.positive != l2.positive or l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return None
    if not l1.args:
        return IDENTITY
    return unify_terms(zip(l1.args, l2.args))


def unify_complementary(l1: Literal, l2: Literal):
    """MGU making ``l1`` and ``l2`` complementary, split into per-literal views.

    Returns ``(s1, s2)`` with ``apply(s1, l1) == complement(apply(s2, l2))`` or
    None.  The literals are expected to come from variable-disjoint clauses.
    """
    if l1.positive == l2.positive or l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return None
    if not l1.args:
        return IDENTITY, IDENTITY
    mgu = unify_terms(zip(l1.args, l2.args))
    if mgu is None:
        return None
    return mgu.restrict(l1.vars()), mgu.restrict(l2.vars())


def match_literal(pattern: Literal, target: Literal, binding: dict) -> dict | None:
    """One-way matching: extend ``binding`` so pattern instantiates to target."""
    if pattern.positive != target.positive or pattern.pred != target.pred:
        return None
    if len(pattern.args) != len(target.args):
        return None
    b = dict(binding)
    stack = list(zip(pattern.args, target.args))
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = b.get(p)
            if bound is None:
                b[p] = t
            elif bound != t:
                return None
        elif isinstance(t, Var) or p.name != t.name or len(p.args) != len(t.args):
            return None
        elif p.ground:
            if p != t:
                return None
        else:
            stack.extend(zip(p.args, t.args))
    return b


# --------------------------------------------------------------------------
# Clause predicates and renaming


def is_tautology(c: Clause) -> bool:
    lits = c.literals
    return any(complement(lit) in lits for lit in c.lits if lit.positive)


def subsumes(c1: Clause, c2: Clause) -> bool:
    """True iff some substitution maps every literal of c1 into c2.

    Variables of c2 are treated as rigid.
    """
    if not c1.lits:
        return True
    if c1.ground:
        return c1.literals <= c2.literals
    targets = {}
    for lit in c2.lits:
        targets.setdefault((lit.positive, lit.pred), []).append(lit)
    # most constrained literal first
    order = sorted(c1.lits, key=lambda l: (len(targets.get((l.positive, l.pred), ())), -len(l.vars())))

    def search(i, binding):
        if i == len(order):
            return True
        lit = order[i]
        for t in targets.get((lit.positive, lit.pred), ()):
            b = match_literal(lit, t, binding)
            if b is not None and search(i + 1, b):
                return True
        return False

    return search(0, {})


def variant(c1: Clause, c2: Clause) -> bool:
    return len(c1) == len(c2) and subsumes(c1, c2) and subsumes(c2, c1)


def renaming_for(c: Clause, namer) -> Substitution:
    """Bijective renaming of c's variables, first-occurrence order, via ``namer(j)``."""
    order = {}
    for lit in c.lits:
        for a in lit.args:
            _collect_ordered(a, order)
    return Substitution({v: Var(namer(j)) for j, v in enumerate(order, start=1)})


def _collect_ordered(t, order):
    if isinstance(t, Var):
        order.setdefault(t, None)
    elif not t.ground:
        for a in t.args:
            _collect_ordered(a, order)


def clause_var_name(position: int, j: int) -> str:
    return f"X{position}_{j}"


def rename_apart(s: ClauseSet) -> ClauseSet:
    """Rename every clause's variables to names private to that clause.

    Clause at position i gets X{i}_1, X{i}_2, ... in first-occurrence order, so
    the operation is idempotent.
    """
    out = []
    for pos, c in enumerate(s.clauses, start=1):
        ren = renaming_for(c, lambda j, pos=pos: clause_var_name(pos, j))
        out.append(ren.clause(c) if ren else c)
    return ClauseSet(out)


class FreshVars:
    """Supply of variable names that cannot clash with parsed input (``_`` prefix)."""

    def __init__(self, start: int = 0):
        self._counter = count(start + 1)
        self.last = start

    def __call__(self, _j=None) -> str:
        self.last = next(self._counter)
        return f"_{self.last}"
