"""Decide conjunctions of polynomial constraints end to end.

The solver assigns variables one at a time; every dead end is
generalized to a cell and its negation steers later attempts.  For the
first problem the learned cells eventually cover the whole x1 line,
which is the proof of unsatisfiability.
"""

from onecell import parse_problem, solve_conjunction
from onecell.realalg import realalg_to_text

UNSAT_PROBLEM = """
(set-logic QF_NRA)
(declare-const x Real)
(declare-const y Real)
(assert (< (+ (* x x) (* y y)) 1))
(assert (> (- y 1) 0))
"""

SAT_PROBLEM = """
(set-logic QF_NRA)
(declare-const x Real)
(declare-const y Real)
(assert (> (- y (* x x)) 0))
(assert (< (- y x) 0))
"""

for name, text in (("inside circle, above line", UNSAT_PROBLEM),
                   ("between parabola and line", SAT_PROBLEM)):
    problem = parse_problem(text)
    result = solve_conjunction(problem.constraints, len(problem.variables))
    print(f"{name}: {result.status}", end="")
    if result.model is not None:
        model = ", ".join(
            f"{v} = {realalg_to_text(c)}"
            for v, c in zip(problem.variables, result.model)
        )
        print(f"  ({model})", end="")
    if result.learned:
        print(f"  [{result.explanations} conflicts generalized]", end="")
    print()
