"""Contradiction separation theorem proving for propositional and first-order CNF."""

from .config import StrategyConfig
from .errors import (
    ArityError,
    ContractViolation,
    CsepError,
    ExtensionImpossible,
    ExtensionRejected,
    OccursCheckError,
    ParseError,
    ResourceLimit,
    SoundnessError,
    UnsupportedFeature,
)
from .fol import InterpretationSketch, build_model, check_t1, preprocess_fol, saturate_fol
from .kernel import begin, close, extend, is_standard_contradiction, select
from .logic import (
    Clause,
    ClauseSet,
    Const,
    Fn,
    Literal,
    Neg,
    Pos,
    Substitution,
    Var,
    apply,
    compose,
    subsumes,
    unify_literals,
    unify_terms,
)
from .oracle import check_proof, ground_entails, linear_chain, linear_chain_of, proof_mutants, truth_table_sat
from .problems import load_problem, parse_problem
from .dimacs import ProblemFile, parse_dimacs
from .tptp import parse_tptp_cnf
from .proof import Proof, Verdict, dump_proof, load_proof
from .prop import extract_model, preprocess, saturate
from .prover import prove, prove_portfolio

__version__ = "0.1.0"
