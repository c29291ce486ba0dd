"""Exact simplex: solve outcomes, certificates, and the brute-force oracle."""

import pytest

from prior_forge import (
    DimensionError,
    LPBuilder,
    SizeCapError,
    ZERO,
    enumerate_basic_solutions,
    farkas_violations,
    feasibility_violations,
    rational,
    solve,
)


def test_optimal_simple():
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    y = b.add_var("y", lower=0)
    b.add_objective(x, 1)
    b.add_objective(y, 1)
    b.add_constraint({x: 1, y: 1}, "<=", 1)
    out = solve(b.build(maximize=True))
    assert out.status == "optimal"
    assert out.objective_value == 1
    assert sum(out.primal) == 1


def test_optimal_exact_fractions():
    # max 2x + 3y  s.t.  x/3 + y/7 <= 1, x <= 2
    b = LPBuilder()
    x = b.add_var("x", lower=0, upper=2)
    y = b.add_var("y", lower=0)
    b.add_objective(x, 2)
    b.add_objective(y, 3)
    b.add_constraint({x: rational("1/3"), y: rational("1/7")}, "<=", 1)
    out = solve(b.build(maximize=True))
    assert out.status == "optimal"
    # everything into y: y = 7 beats any mix (3/7 per unit of slack vs 2/3 per 1/3)
    assert out.primal == (ZERO, rational(7))
    assert out.objective_value == 21


def test_free_variable():
    b = LPBuilder()
    x = b.add_var("x")
    b.add_objective(x, 1)
    b.add_constraint({x: 1}, ">=", -5)
    out = solve(b.build(maximize=False))
    assert out.status == "optimal"
    assert out.objective_value == -5
    assert out.primal == (rational(-5),)


def test_equality_rows():
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    y = b.add_var("y", lower=0)
    b.add_constraint({x: 1, y: 1}, "=", 1)
    b.add_constraint({x: 1, y: -1}, "=", rational("1/3"))
    b.add_objective(x, 1)
    out = solve(b.build(maximize=False))
    assert out.status == "optimal"
    assert out.primal == (rational("2/3"), rational("1/3"))


def test_infeasible_yields_verified_farkas():
    b = LPBuilder()
    x = b.add_var("x", lower=0, upper=1)
    b.add_constraint({x: 1}, ">=", 2)
    lp = b.build(maximize=False)
    out = solve(lp)
    assert out.status == "infeasible"
    assert out.primal is None
    assert out.certificate is not None
    # Independent re-multiplication: 0 <= strictly negative.
    assert farkas_violations(lp, out.certificate) == []


def test_infeasible_equalities():
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    y = b.add_var("y", lower=0)
    b.add_constraint({x: 1, y: 1}, "=", 1)
    b.add_constraint({x: 2, y: 2}, "=", 3)
    lp = b.build(maximize=False)
    out = solve(lp)
    assert out.status == "infeasible"
    assert farkas_violations(lp, out.certificate) == []


def test_unbounded():
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    b.add_objective(x, 1)
    out = solve(b.build(maximize=True))
    assert out.status == "unbounded"
    assert out.primal is None
    assert out.objective_value is None


def test_beale_cycling_instance_terminates():
    # Classic degenerate instance that cycles under most-negative pivoting.
    # Bland's rule must terminate at value -1/20.
    b = LPBuilder()
    x4 = b.add_var("x4", lower=0)
    x5 = b.add_var("x5", lower=0)
    x6 = b.add_var("x6", lower=0)
    x7 = b.add_var("x7", lower=0)
    b.add_objective(x4, rational("-3/4"))
    b.add_objective(x5, 150)
    b.add_objective(x6, rational("-1/50"))
    b.add_objective(x7, 6)
    b.add_constraint({x4: rational("1/4"), x5: -60, x6: rational("-1/25"), x7: 9}, "<=", 0)
    b.add_constraint({x4: rational("1/2"), x5: -90, x6: rational("-1/50"), x7: 3}, "<=", 0)
    b.add_constraint({x6: 1}, "<=", 1)
    out = solve(b.build(maximize=False))
    assert out.status == "optimal"
    assert out.objective_value == rational("-1/20")


def test_feasibility_violations_reports():
    b = LPBuilder()
    x = b.add_var("x", lower=0, upper=1)
    b.add_constraint({x: 1}, ">=", rational("1/2"))
    lp = b.build(maximize=False)
    assert feasibility_violations(lp, (rational("1/2"),)) == []
    assert feasibility_violations(lp, (ZERO,))  # constraint fails
    assert feasibility_violations(lp, (rational(2),))  # above upper bound
    assert feasibility_violations(lp, (ZERO, ZERO))  # wrong arity


def test_bad_relation_rejected():
    b = LPBuilder()
    x = b.add_var("x")
    with pytest.raises(DimensionError):
        b.add_constraint({x: 1}, "<", 0)


def test_enumerate_simplex_vertices():
    b = LPBuilder()
    xs = [b.add_var(f"x{j}", lower=0) for j in range(3)]
    b.add_constraint({j: 1 for j in xs}, "=", 1)
    lp = b.build(maximize=False)
    points = enumerate_basic_solutions(lp)
    expected = {
        (rational(1), ZERO, ZERO),
        (ZERO, rational(1), ZERO),
        (ZERO, ZERO, rational(1)),
    }
    assert set(points) == expected


def test_enumerate_agrees_with_solve():
    # Optimum of a bounded LP is attained at some enumerated vertex.
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    y = b.add_var("y", lower=0)
    b.add_objective(x, 3)
    b.add_objective(y, 5)
    b.add_constraint({x: 1}, "<=", 4)
    b.add_constraint({y: 2}, "<=", 12)
    b.add_constraint({x: 3, y: 2}, "<=", 18)
    lp = b.build(maximize=True)
    out = solve(lp)
    points = enumerate_basic_solutions(lp)
    best = max(rational(3) * p[0] + rational(5) * p[1] for p in points)
    assert out.objective_value == best == 36


def test_enumerate_caps():
    b = LPBuilder()
    for j in range(13):
        b.add_var(f"x{j}", lower=0)
    lp = b.build(maximize=False)
    with pytest.raises(SizeCapError):
        enumerate_basic_solutions(lp, max_vars=12)


def test_enumerate_infeasible_is_empty():
    b = LPBuilder()
    x = b.add_var("x", lower=0)
    b.add_constraint({x: 1}, "=", 1)
    b.add_constraint({x: 1}, "=", 2)
    assert enumerate_basic_solutions(b.build(maximize=False)) == ()
