"""Builders, kernel replays and corpus generators shared by the test modules."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from csep.kernel import begin, close, extend
from csep.logic import Clause, ClauseSet, Fn, Literal, Var
from csep.proof import Proof
from csep.search import step_from_result
from csep.text import clause_from_text, literal_from_text


def cl(text: str, id=None) -> Clause:
    c = clause_from_text(text)
    return c if id is None else c.with_id(id)


def lit(text: str) -> Literal:
    return literal_from_text(text)


def cset(*texts) -> ClauseSet:
    return ClauseSet([cl(t) for t in texts])


def numbered(texts) -> dict:
    return {i: cl(t, i) for i, t in enumerate(texts, start=1)}


def lits_of(c) -> set:
    return {str(l) for l in c.lits}


def replay(clauses: dict, plan):
    """Drive the kernel along a recorded plan.

    ``plan[0]`` is ``(clause id, main literal)``; every later entry is
    ``(clause id, entering literal, main literal or None)``, literals given as
    text over the source clause.
    """
    cid, x = plan[0]
    state = begin(clauses[cid], lit(x), source_id=cid)
    for cid, y, x in plan[1:]:
        state = extend(state, clauses[cid], lit(y), x=None if x is None else lit(x), source_id=cid)
    return close(state)


def proof_from_plans(clauses: dict, plans) -> Proof:
    """Chain several recorded plans into a proof; each result gets the next free id."""
    known = dict(clauses)
    steps = []
    nid = max(known) + 1
    for plan in plans:
        res = replay(known, plan)
        derived, step = step_from_result(res, nid)
        known[nid] = derived
        steps.append(step)
        nid += 1
    return Proof(steps=steps, inputs=dict(clauses))


# --------------------------------------------------------------------------
# propositional corpora

ATOMS3 = ("v1", "v2", "v3")


def clause_pool(atoms, max_len=3):
    """Every clause over ``atoms`` with at most ``max_len`` literals, as literal sets.

    The empty clause and tautologies are included.
    """
    lits = [Literal(sign, a) for a in atoms for sign in (True, False)]
    return [frozenset(c) for n in range(max_len + 1) for c in itertools.combinations(lits, n)]


def exhaustive_corpus(atoms=ATOMS3, max_clauses=4, max_len=3):
    """All sets of 1..max_clauses distinct clauses from :func:`clause_pool`."""
    pool = clause_pool(atoms, max_len)
    for m in range(1, max_clauses + 1):
        for combo in itertools.combinations(pool, m):
            yield ClauseSet([Clause(sorted(c, key=str)) for c in combo])


def random_prop_set(rng: random.Random, n_vars=4, min_clauses=2, max_clauses=10, max_len=4) -> ClauseSet:
    atoms = [f"v{i}" for i in range(1, n_vars + 1)]
    clauses = []
    for _ in range(rng.randint(min_clauses, max_clauses)):
        vs = rng.sample(atoms, rng.randint(1, min(max_len, n_vars)))
        clauses.append(Clause(Literal(rng.random() < 0.5, v) for v in vs))
    return ClauseSet(clauses)


def random_family(rng: random.Random, n_atoms=3, max_clauses=4, max_len=3):
    """A list of literal lists (clauses may repeat or be tautologies)."""
    atoms = [f"a{i}" for i in range(n_atoms)]
    fam = []
    for _ in range(rng.randint(1, max_clauses)):
        fam.append([Literal(rng.random() < 0.5, rng.choice(atoms)) for _ in range(rng.randint(1, max_len))])
    return fam


# --------------------------------------------------------------------------
# hypothesis strategies

prop_literals = st.builds(Literal, st.booleans(), st.sampled_from(("v1", "v2", "v3", "v4")))
prop_clauses = st.lists(prop_literals, min_size=1, max_size=3).map(Clause)
prop_sets = st.lists(prop_clauses, min_size=1, max_size=6).map(ClauseSet)

VAR_NAMES = ("X", "Y", "Z")
CONSTS = ("a", "b")


def terms(depth=2):
    leaves = st.one_of(st.sampled_from(VAR_NAMES).map(Var), st.sampled_from(CONSTS).map(Fn))
    if depth == 0:
        return leaves
    return st.one_of(leaves, st.builds(lambda a: Fn("f", (a,)), terms(depth - 1)), st.builds(lambda a, b: Fn("g", (a, b)), terms(depth - 1), terms(depth - 1)))


fol_literals = st.one_of(
    st.builds(lambda s, t: Literal(s, "p", (t,)), st.booleans(), terms()),
    st.builds(lambda s, t, u: Literal(s, "r", (t, u)), st.booleans(), terms(1), terms(1)),
    st.builds(lambda s: Literal(s, "q"), st.booleans()),
)
fol_clauses = st.lists(fol_literals, min_size=1, max_size=3).map(Clause)
fol_sets = st.lists(fol_clauses, min_size=1, max_size=5).map(ClauseSet)
