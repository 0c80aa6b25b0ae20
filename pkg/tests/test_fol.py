import json
import time

import pytest
from hypothesis import given, settings

from csep.config import StrategyConfig
from csep.errors import ContractViolation, ResourceLimit
from csep.fol import (
    InterpretationSketch,
    build_model,
    check_t1,
    factor_substitutions,
    find_witness,
    guard_ok,
    preprocess_fol,
    saturate_fol,
)
from csep.kernel import begin, close, extend
from csep.logic import ClauseSet, rename_apart
from csep.oracle import check_proof, ground_entails
from csep.proof import SAT, UNKNOWN, UNSAT
import cases
from helpers import cl, cset, fol_sets, lit, lits_of, numbered, proof_from_plans, replay


def problem(texts):
    return rename_apart(ClauseSet([cl(t) for t in texts]))


def test_preprocess_removes_tautologies_and_subsumed_clauses():
    out = preprocess_fol(cset("p(X) | ~p(X)", "p(X)", "p(a) | q(b)", "p(Y)"))
    assert len(out) == 1
    assert out[0].id == 2


def test_factor_substitutions():
    subs = factor_substitutions(cl("p(X) | p(Y) | q(X)"))
    assert subs[0] is None
    assert len(subs) == 2
    assert lits_of(subs[1].clause(cl("p(X) | p(Y) | q(X)"))) in ({"p(X)", "q(X)"}, {"p(Y)", "q(Y)"})
    assert factor_substitutions(cl("p(a) | p(b)")) == [None]


def test_guard():
    assert guard_ok([lit("p(X)"), lit("p(a)")])
    assert guard_ok([lit("p(a)"), lit("~p(b)")])
    assert not guard_ok([lit("p(a)"), lit("~p(a)")])
    assert not guard_ok([lit("p(X)"), lit("~p(a)")])
    assert not guard_ok([lit("~p(a)"), lit("p(X)")])


def test_build_model_and_document_round_trip():
    sk = InterpretationSketch(selected={1: lit("p(f(a))"), 2: lit("~p(a)")}, clauses=tuple(cset("p(f(a))", "~p(a)")))
    m = build_model(sk)
    assert m.verified
    assert set(m.domain) == {"a", "f(a)", "d"}
    back = InterpretationSketch.from_dict(json.loads(json.dumps(m.to_dict())))
    assert back.to_dict() == m.to_dict()
    assert back.clause_valid(cl("p(f(a))")) and back.clause_valid(cl("~p(a)"))
    with pytest.raises(ContractViolation):
        build_model(InterpretationSketch(selected={1: lit("p(a)"), 2: lit("~p(a)")}))


def test_check_t1_on_a_covering_chain():
    c = numbered(["p(X) | q(X)", "~q(a) | r(a)"])
    res = close(extend(begin(c[1], lit("q(X)")), c[2], lit("~q(a)")))
    sk = check_t1(res, list(c.values()))
    assert sk is not None and sk.verified
    assert all(sk.clause_valid(x) for x in c.values())


def test_worked_refutations_replay_and_check():
    for texts, plans, results in (
        (cases.FUNCTION_TERM, cases.FUNCTION_TERM_PLANS, cases.FUNCTION_TERM_RESULTS),
        (cases.TWO_STEP, cases.TWO_STEP_PLANS, cases.TWO_STEP_RESULTS),
    ):
        c = numbered(texts)
        proof = proof_from_plans(c, plans)
        assert [lits_of(st.csc) for st in proof.steps] == results
        assert check_proof(proof, ClauseSet(list(c.values())))


def test_two_step_unifiers():
    c = numbered(cases.TWO_STEP)
    known = dict(c)
    for plan, expected in zip(cases.TWO_STEP_PLANS, cases.TWO_STEP_SIGMAS):
        res = replay(known, plan)
        for slot_index, slot in enumerate(res.state.slots):
            if slot.source_id in expected:
                got = {v.name: str(t) for v, t in res.state.theta(slot_index).items()}
                assert got == expected[slot.source_id]
        known[len(known) + 1] = res.clause.with_id(len(known) + 1)


@pytest.mark.parametrize("name", sorted(cases.EPR_UNSAT))
def test_epr_refutations(name):
    s = problem(cases.EPR_UNSAT[name])
    t = time.perf_counter()
    v = saturate_fol(s)
    assert time.perf_counter() - t < 10
    assert v.status == UNSAT
    assert check_proof(v.proof, s)


@pytest.mark.parametrize("texts", cases.SAT_DISJOINT + cases.SAT_GROUND_DISTINCT, ids=str)
def test_satisfiable_toys(texts):
    s = problem(texts)
    v = saturate_fol(s)
    assert v.status == SAT
    assert v.sketch.verified
    assert all(v.sketch.clause_valid(c) for c in s)
    assert all(v.sketch.literal_valid(l) for l in v.sketch.selected.values())


def test_case_labels():
    for texts in cases.SAT_DISJOINT:
        assert saturate_fol(problem(texts)).sketch.case == "disjoint-predicates"
    for texts in cases.SAT_GROUND_DISTINCT:
        assert saturate_fol(problem(texts)).sketch.case == "ground-distinct"


def test_find_witness():
    sk = find_witness(list(problem(["p(X) | q(X)", "~p(a)"])))
    assert sk is not None
    # p(X) cannot be selected next to ~p(a), so the first clause goes through q
    assert sk.selected[1].pred == "q" and str(sk.selected[2]) == "~p(a)"
    assert find_witness(list(problem(["p(X)", "~p(a)"]))) is None


def test_infinite_models_are_not_claimed():
    v = saturate_fol(problem(cases.INFINITE_ONLY), StrategyConfig(max_steps=3))
    assert v.status == UNKNOWN


@settings(max_examples=40)
@given(fol_sets)
def test_fol_verdicts_are_certified(s):
    s = rename_apart(s)
    v = saturate_fol(s, StrategyConfig(max_steps=4, max_term_depth=3, node_budget=100))
    if v.status == UNSAT:
        assert check_proof(v.proof, s)
        for st in v.proof.steps[:3]:
            parents = [v.proof.inputs.get(p) or next(x.csc for x in v.proof.steps if x.id == p) for p in st.parents]
            try:
                assert ground_entails(parents, st.csc, depth=2)
            except ResourceLimit:
                pass
    elif v.status == SAT:
        assert all(v.sketch.clause_valid(c) for c in s)
