"""Conjunction solving: sample selection, verdicts, budget handling."""

import random
from fractions import Fraction

import pytest

from onecell.explain import Constraint, constraint_satisfied
from onecell.polynomial import parse_poly
from onecell.smtlib import parse_problem
from onecell.solver import (
    SAT,
    UNKNOWN,
    UNSAT,
    simplest_between,
    solve_conjunction,
)

from conftest import random_poly, random_sample


def test_simplest_between_basic():
    assert simplest_between(Fraction(-1, 2), Fraction(1, 2)) == 0
    assert simplest_between(Fraction(0), Fraction(1)) == Fraction(1, 2)
    assert simplest_between(Fraction(4), Fraction(5)) == Fraction(9, 2)
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(10, 3), Fraction(100)) == 4


def test_simplest_between_is_strictly_inside_and_minimal(rng):
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        b = a + Fraction(rng.randint(1, 30), rng.randint(1, 20))
        r = simplest_between(a, b)
        assert a < r < b
        # no rational with a smaller denominator fits in the open interval
        for d in range(1, r.denominator):
            lo = (a * d).__floor__() + 1
            hi = (b * d).__ceil__() - 1
            for num in range(lo, hi + 1):
                assert not (a < Fraction(num, d) < b)


def test_simplest_between_rejects_empty():
    with pytest.raises(ValueError):
        simplest_between(Fraction(1), Fraction(1))


def _solve(text, **kw):
    prob = parse_problem(text)
    return solve_conjunction(prob.constraints, len(prob.variables), **kw)


def test_sat_simple():
    r = _solve("(declare-const x Real)(assert (> x 3))")
    assert r.status == SAT
    assert constraint_satisfied(Constraint(parse_poly("x1-3"), ">"), r.model)


def test_sat_prefers_simple_model():
    r = _solve("(declare-const x Real)(assert (> (* x x) 0))")
    assert r.status == SAT


def test_sat_equality_needs_algebraic_value():
    r = _solve("(declare-const x Real)(assert (= (* x x) 2))(assert (> x 0))")
    assert r.status == SAT
    assert not r.model[0].is_rational()


def test_unsat_direct_level_one():
    r = _solve("(declare-const x Real)(assert (< (* x x) 0))")
    assert r.status == UNSAT
    assert r.explanations == 1


def test_unsat_constant_constraint():
    r = _solve("(declare-const x Real)(assert (< 1 0))")
    assert r.status == UNSAT
    assert r.explanations == 0


def test_unsat_needs_learned_cover():
    r = _solve(
        "(declare-const x Real)(declare-const y Real)"
        "(assert (< (+ (* x x) (* y y)) 1))(assert (> (- y 1) 0))"
    )
    assert r.status == UNSAT
    assert r.explanations >= 2
    assert r.learned


def test_sat_after_conflicts():
    # y > x^2 and y < x forces 0 < x < 1; many x choices conflict first
    r = _solve(
        "(declare-const x Real)(declare-const y Real)"
        "(assert (> (- y (* x x)) 0))(assert (< (- y x) 0))"
    )
    assert r.status == SAT
    x, y = r.model
    from onecell.realalg import sign_at, Sample

    assert sign_at(parse_poly("x2-x1^2"), r.model) > 0
    assert sign_at(parse_poly("x2-x1"), r.model) < 0


def test_budget_exhaustion_gives_unknown():
    r = _solve(
        "(declare-const x Real)(declare-const y Real)"
        "(assert (< (+ (* x x) (* y y)) 1))(assert (> (- y 1) 0))",
        budget=1,
    )
    assert r.status == UNKNOWN
    assert not r


def test_three_variable_sat():
    r = _solve(
        "(declare-const a Real)(declare-const b Real)(declare-const c Real)"
        "(assert (> (+ (* a a) (* b b) (* c c)) 4))"
        "(assert (= (+ a b) 1))"
    )
    assert r.status == SAT


def test_empty_conjunction_is_sat():
    r = _solve("(declare-const x Real)")
    assert r.status == SAT


def test_models_verified_randomly(rng):
    """Whatever verdict the search reaches, SAT models must satisfy
    every constraint exactly."""
    from onecell.realalg import Sample

    for _ in range(25):
        nv = rng.randint(1, 2)
        cons = []
        for _ in range(rng.randint(1, 3)):
            p = random_poly(rng, nv)
            cons.append(Constraint(p, rng.choice(["<", "<=", ">", ">=", "=", "!="])))
        r = solve_conjunction(cons, nv, budget=16)
        if r.status == SAT:
            assert all(constraint_satisfied(c, r.model) for c in cons)
