import json
import random

import pytest
from hypothesis import given

from csep.dimacs import dimacs_to_text, parse_dimacs
from csep.errors import ParseError, UnsupportedFeature
from csep.fol import saturate_fol
from csep.logic import ClauseSet, rename_apart
from csep.oracle import check_proof
from csep.problems import detect_format, load_problem, parse_problem, problem_to_text
from csep.proof import dump_model, dump_proof, load_model, load_proof
from csep.prop import saturate
from csep.tptp import parse_tptp_cnf, tptp_to_text
import cases
from helpers import cl, fol_sets, lits_of, numbered, proof_from_plans, random_prop_set


def texts(s):
    return [str(c) for c in s]


# --------------------------------------------------------------------------
# DIMACS


def test_dimacs_basics():
    assert texts(parse_dimacs("p cnf 2 2\n1 -2 0\n2 0").clauses) == ["v1 | ~v2", "v2"]
    p = parse_dimacs("c comment\np cnf 1 1\n1 0")
    assert texts(p.clauses) == ["v1"] and p.warnings == []
    # clauses may span lines and several may share one
    assert texts(parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 0\n").clauses) == ["v1 | v2 | v3", "~v1"]
    assert len(parse_dimacs("p cnf 1 1\n1 0\n%\n0\n").clauses) == 1


def test_dimacs_count_mismatch_is_a_warning():
    p = parse_dimacs("p cnf 2 3\n1 0\n-2 0\n")
    assert len(p.clauses) == 2
    assert p.warnings and "3 clauses" in p.warnings[0]


@pytest.mark.parametrize(
    "text, line",
    [
        ("p cnf x 2\n1 0\n", 1),
        ("p dnf 2 2\n1 0\n", 1),
        ("p cnf 2 1\n1 a 0\n", 2),
        ("1 0\np cnf 1 1\n", 1),
        ("c only a comment\n", None),
        ("p cnf 2 1\n1 2\n", 2),
    ],
)
def test_dimacs_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_dimacs_writer_keeps_atom_names():
    s = ClauseSet([cl("p | ~q"), cl("q | v7")])
    back = parse_dimacs(dimacs_to_text(s)).clauses
    assert texts(back) == texts(s)


# --------------------------------------------------------------------------
# TPTP


def test_tptp_basics():
    p = parse_tptp_cnf("cnf(c1, axiom, p(X) | ~q(X)).")
    assert len(p.clauses) == 1
    assert lits_of(p.clauses[0]) == {"p(X1_1)", "~q(X1_1)"}
    assert p.metadata["clause_names"] == ["c1"] and p.metadata["roles"] == ["axiom"]


def test_tptp_worked_problem():
    src = "\n".join(f"cnf(c{i}, axiom, {t})." for i, t in enumerate(cases.TWO_STEP, 1))
    p = parse_tptp_cnf("% two-step refutation\n" + src)
    assert len(p.clauses) == 5
    c2 = p.clauses[1]
    assert {l.pred for l in c2.lits} == {"d", "l"}
    assert str(next(l for l in c2.lits if l.pred == "l").args[0]) == "a1"
    # variables are separated per clause
    assert not (p.clauses[1].vars() & p.clauses[2].vars())


def test_tptp_annotations_and_comments():
    p = parse_tptp_cnf("% head\ncnf(a, axiom, (p(a) | q), file('x.p', a)).\n/* block */ cnf(b, negated_conjecture, ~q).")
    assert texts(p.clauses) == ["p(a) | q", "~q"]


@pytest.mark.parametrize(
    "text",
    [
        "cnf(c, axiom, X = Y).",
        "cnf(c, axiom, p(X) | X != a).",
        "fof(f, axiom, ![X]: p(X)).",
        "tff(t, type, p: $i > $o).",
        "include('Axioms/SET001-0.ax').",
    ],
)
def test_tptp_unsupported(text):
    with pytest.raises(UnsupportedFeature):
        parse_tptp_cnf(text)


@pytest.mark.parametrize(
    "text",
    ["cnf(c, axiom, p(X).", "cnf(c, axiom, p(a) | ).", "cnf(c, axiom, p(a)). cnf(d, axiom, p(a,b)).", "cnf(c axiom p)."],
)
def test_tptp_syntax_errors(text):
    with pytest.raises(ParseError) as exc:
        parse_tptp_cnf(text)
    assert exc.value.line == 1


def test_format_detection():
    assert detect_format("p cnf 1 1\n1 0\n") == "dimacs"
    assert detect_format("cnf(a, axiom, p).") == "tptp_cnf"
    assert detect_format("1 0\n", "x.cnf") == "dimacs"
    with pytest.raises(ParseError):
        detect_format("hello")


# --------------------------------------------------------------------------
# generated round-trip corpus


def _fol_text(rng, i):
    preds = [("p", 1), ("q", 2), ("r", 0), ("s", 1)]

    def term(depth):
        k = rng.random()
        if depth == 0 or k < 0.4:
            return rng.choice(["X", "Y", "Z"])
        if k < 0.7:
            return rng.choice(["a", "b", "c1"])
        return f"f({term(depth - 1)})" if rng.random() < 0.5 else f"g({term(depth - 1)},{term(depth - 1)})"
    lines = []
    for j in range(rng.randint(1, 6)):
        lits = []
        for _ in range(rng.randint(1, 4)):
            name, n = rng.choice(preds)
            atom = name if n == 0 else f"{name}({','.join(term(2) for _ in range(n))})"
            lits.append(("~" if rng.random() < 0.5 else "") + atom)
        role = rng.choice(["axiom", "hypothesis", "negated_conjecture"])
        lines.append(f"cnf(c{i}_{j}, {role}, {' | '.join(lits)}).")
    return "\n".join(lines) + "\n"


def test_round_trip_corpus(tmp_path):
    rng = random.Random(2024)
    for i in range(200):
        s = random_prop_set(rng, n_vars=rng.randint(1, 8), max_clauses=12)
        (tmp_path / f"g{i:03}.cnf").write_text(dimacs_to_text(s, comment=f"generated {i}"))
        (tmp_path / f"g{i:03}.p").write_text(_fol_text(rng, i))
    files = sorted(tmp_path.iterdir())
    assert len(files) == 400
    for f in files:
        first = load_problem(f)
        again = parse_problem(problem_to_text(first), first.format)
        assert texts(again.clauses) == texts(first.clauses), f.name
        assert again.metadata.get("roles") == first.metadata.get("roles")


@given(fol_sets)
def test_tptp_writer_round_trip(s):
    s = rename_apart(s)
    assert texts(parse_tptp_cnf(tptp_to_text(s)).clauses) == texts(s)


# --------------------------------------------------------------------------
# proof and model documents


def test_proof_document_round_trip():
    for texts_, plans in ((cases.SIX_CLAUSE, cases.SIX_CLAUSE_PLANS), (cases.FUNCTION_TERM, cases.FUNCTION_TERM_PLANS)):
        c = numbered(texts_)
        s = ClauseSet(list(c.values()))
        proof = proof_from_plans(c, plans)
        text = dump_proof(proof)
        back, header = load_proof(text)
        assert header["verdict"] == "Unsatisfiable"
        assert dump_proof(back) == text
        assert bool(check_proof(back, s)) == bool(check_proof(proof, s)) is True


def test_engine_proofs_survive_serialization():
    rng = random.Random(5)
    for _ in range(30):
        s = random_prop_set(rng)
        v = saturate(s)
        if v.status == "UNSAT":
            back, _ = load_proof(dump_proof(v.proof))
            assert check_proof(back, s)
        else:
            doc = load_model(dump_model(v))
            assert set(doc["model"]) == set(v.model)


def test_interpretation_document():
    s = rename_apart(ClauseSet([cl(t) for t in cases.SAT_GROUND_DISTINCT[0]]))
    doc = json.loads(dump_model(saturate_fol(s)))
    assert doc["verdict"] == "Satisfiable"
    assert doc["interpretation"]["verified"] is True


def test_malformed_documents():
    with pytest.raises(ParseError):
        load_proof("{not json")
    with pytest.raises(ParseError):
        load_proof('{"format": "other"}')
    with pytest.raises(ParseError):
        load_proof('{"format": "csep-proof/1", "steps": [{"id": 1}]}')
    with pytest.raises(ParseError):
        load_model('{"format": "csep-proof/1"}')
