"""Fixed problems: worked chains with recorded orders, EPR refutations and satisfiable toys.

Each worked chain lists its clauses (ids from 1) and one or more plans for
:func:`helpers.replay`, together with the expected separated clauses.
"""

# --------------------------------------------------------------------------
# propositional worked chains

THREE_CLAUSE = ["~p | ~q | t", "p | t", "~t"]
THREE_CLAUSE_PLAN = [(3, "~t"), (2, "t", "p"), (1, "~p", None)]

FOUR_CLAUSE = ["p", "~p | ~q | r", "r | q", "~r"]
FOUR_CLAUSE_FORWARD = [(1, "p"), (2, "~p", "~q"), (3, "q", "r"), (4, "~r", None)]
FOUR_CLAUSE_BACKWARD = [(4, "~r"), (3, "r", "q"), (2, "~q", "~p"), (1, "p", None)]
FOUR_CLAUSE_NO_ORDERS = [(1, 2, 4, 3), (1, 4, 2, 3)]

SIX_CLAUSE = ["x1 | x5", "~x1 | x2", "~x1 | ~x2 | x3", "~x1 | ~x3 | x4", "~x1 | ~x2 | ~x4", "x1 | ~x5"]
SIX_CLAUSE_PLANS = [
    [(1, "x1"), (2, "~x1", "x2"), (3, "~x2", "x3"), (4, "~x3", "x4"), (5, "~x4", None)],
    [(7, "x5"), (6, "~x5", "x1"), (2, "~x1", "x2"), (3, "~x2", "x3"), (4, "~x3", "x4"), (5, "~x4", None)],
]
SIX_CLAUSE_RESULTS = [{"x5"}, set()]

# separating a three-clause chain then adding a unit is not the same as
# nesting the unit inside
ASSOCIATIVITY = ["~p | ~q | t", "p | t", "q | t", "~t"]

# linear resolution reaches d, but no chain visits the clauses in reverse order
UNITS_REVERSED = ["a | b | c | d", "~a", "~b", "~c"]
UNITS_REVERSED_FOL = ["p1(X1) | p2(X2) | p3(X3) | p4(X4)", "~p1(a1)", "~p2(a2)", "~p3(a3)"]

# --------------------------------------------------------------------------
# first-order worked chains

SYMMETRIC_TRANSITIVE = [
    "~p(X11,X12) | p(X12,X11)",
    "~p(X21,X22) | ~p(X22,X23) | p(X21,X23)",
    "p(X31,f(X31))",
    "~p(f(a1),a2)",
]
SYMMETRIC_TRANSITIVE_PLAN = [
    (4, "~p(f(a1),a2)"),
    (2, "p(X21,X23)", "~p(X21,X22)"),
    (1, "p(X12,X11)", "~p(X11,X12)"),
    (3, "p(X31,f(X31))", None),
]
SYMMETRIC_TRANSITIVE_SIGMA = {
    "X11": "a1",
    "X12": "f(a1)",
    "X21": "f(a1)",
    "X22": "a1",
    "X23": "a2",
    "X31": "a1",
}

FUNCTION_TERM = [
    "~p1(X1) | p2(X1) | p3(X1,f1(X1))",
    "~p1(X2) | p2(X2) | p4(f1(X2))",
    "p5(a)",
    "p1(a)",
    "~p3(a,X3) | p5(X3)",
    "~p5(X4) | ~p2(X4)",
    "~p5(X5) | ~p4(X5)",
]
# The order giving p2(a); see the decision ledger for the six-clause table.
FUNCTION_TERM_PLANS = [
    [(4, "p1(a)"), (1, "~p1(X1)", "p3(X1,f1(X1))"), (5, "~p3(a,X3)", "p5(X3)"), (7, "~p5(X5)", "~p4(X5)"), (2, "p4(f1(X2))", None)],
    [(3, "p5(a)"), (6, "~p5(X4)", "~p2(X4)"), (8, "p2(a)", None)],
]
FUNCTION_TERM_RESULTS = [{"p2(a)"}, set()]
FUNCTION_TERM_LAST_SIGMA = {"X4": "a"}

TWO_STEP = ["p(a1)", "~d(X21) | l(a1,X22)", "~p(X31) | ~q(X32) | ~l(X31,X32)", "d(a2)", "q(a2)"]
TWO_STEP_PLANS = [
    [(1, "p(a1)"), (3, "~p(X31)", "~q(X32)"), (5, "q(a2)", None)],
    [(6, "~l(a1,a2)"), (2, "l(a1,X22)", "~d(X21)"), (4, "d(a2)", None)],
]
TWO_STEP_RESULTS = [{"~l(a1,a2)"}, set()]
TWO_STEP_SIGMAS = [{3: {"X31": "a1", "X32": "a2"}}, {2: {"X21": "a2", "X22": "a2"}}]

# --------------------------------------------------------------------------
# unsatisfiable EPR problems (no function symbols, at most two constants)

EPR_UNSAT = {
    "syllogism": ["human(a)", "~human(X) | mortal(X)", "~mortal(a)"],
    "symmetry": ["r(a,b)", "~r(X,Y) | r(Y,X)", "~r(b,a)"],
    "split-unit": ["p(X) | q(X)", "~p(a)", "~q(a)"],
    "two-constants": ["p(a) | p(b)", "~p(X) | q(X)", "~q(a)", "~q(b)"],
    "strict-order-cycle": ["lt(a,b)", "lt(b,a)", "~lt(X,Y) | ~lt(Y,Z) | lt(X,Z)", "~lt(X,X)"],
    "self-loop-colouring": [
        "red(X) | green(X)",
        "~e(X,Y) | ~red(X) | ~red(Y)",
        "~e(X,Y) | ~green(X) | ~green(Y)",
        "e(a,b)",
        "e(a,a)",
    ],
    "mixed-arity": ["p(X,Y) | q(Y)", "~p(a,Y)", "~q(b)"],
    "case-split": ["a(X) | b(X)", "~a(X) | c(X)", "~b(X) | c(X)", "~c(a)"],
    "factoring": ["p(X) | p(Y)", "~p(U) | ~p(V)"],
    "chain-of-five": [
        "s0(a)",
        "~s0(X) | s1(X)",
        "~s1(X) | s2(X)",
        "~s2(X) | s3(X)",
        "~s3(X) | s4(b) | s4(X)",
        "~s4(a)",
        "~s4(b)",
    ],
}

# --------------------------------------------------------------------------
# satisfiable first-order toys, by the kind of witness they are built to produce

SAT_DISJOINT = [
    ["p(X) | q(X)", "~q(a) | r(a)"],
    ["~p(X) | q(f(X))", "p(a)"],
    ["p(a) | ~q(b)", "q(X) | r(X)", "~r(b) | s(b)"],
    ["p(X) | ~q(X)", "q(a)", "~p(b) | t(b)"],
    ["r(X,Y) | ~s(Y)", "s(a)", "~r(a,a) | u(a)"],
    ["~p(X) | ~q(X) | w(X)", "p(a)", "q(a)"],
    ["m(X) | n(X)", "~m(a) | k(a)", "~n(b) | k(b)"],
    ["h(f(X)) | ~g(X)", "g(a)", "~h(f(a)) | j(a)"],
    ["p(X)", "~p(X) | q(X)", "~q(a) | p(a)"],
    ["~a1(X) | a2(X)", "~a2(X) | a3(X)", "a1(c)"],
]

SAT_GROUND_DISTINCT = [
    ["p(a) | s(c)", "~p(a) | ~p(b)"],
    ["q(a,b) | r(a)", "~q(a,b) | ~q(b,a)"],
    ["m(a) | n(b)", "~m(a) | ~m(b)", "~n(b) | ~n(a)"],
    ["t(a) | w(X)", "~t(a) | ~t(b)", "~w(b)"],
    ["p(a)", "~p(b)"],
    ["p(a) | q(a)", "~p(b)", "~q(b)"],
    ["r(a,b)", "~r(b,a)"],
    ["s(a) | s(b)", "~s(c)"],
    ["e(a,a)", "~e(a,b)", "~e(b,a)"],
    ["p(f(a))", "~p(a)"],
]

# satisfiable, but every model is infinite
INFINITE_ONLY = ["lt(X,f(X))", "~lt(X,X)", "~lt(X,Y) | ~lt(Y,Z) | lt(X,Z)"]
