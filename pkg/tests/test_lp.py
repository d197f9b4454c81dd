import random
from fractions import Fraction

import pytest

scipy_optimize = pytest.importorskip("scipy.optimize")

from toricvanish.lp import is_feasible, linprog_exact


def test_simple_optimum():
    # min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
    res = linprog_exact([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == "optimal"
    assert res.x == [Fraction(8, 5), Fraction(6, 5)]
    assert res.fun == Fraction(-14, 5)


def test_infeasible_and_unbounded():
    assert linprog_exact([1], A_ub=[[1]], b_ub=[-1]).status == "infeasible"
    assert linprog_exact([-1, 0], A_ub=[[0, 1]], b_ub=[1]).status == "unbounded"


def test_equality_with_redundant_row():
    res = linprog_exact([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[3, 6])
    assert res.status == "optimal" and res.fun == 3
    assert not is_feasible(A_eq=[[1, 1], [1, 1]], b_eq=[1, 2], n=2)


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule must finish
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    res = linprog_exact(c, A_ub=A, b_ub=[0, 0, 1])
    assert res.status == "optimal" and res.fun == Fraction(-1, 20)


@pytest.mark.parametrize("seed", range(60))
def test_against_scipy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 6)
    A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-3, 6) for _ in range(m)]
    c = [rng.randint(-3, 3) for _ in range(n)]
    eq = rng.random() < 0.3
    kw = dict(A_eq=A[:1], b_eq=b[:1], A_ub=A[1:], b_ub=b[1:]) if eq else dict(A_ub=A, b_ub=b)
    ours = linprog_exact(c, **{k: v for k, v in kw.items()})
    ref = scipy_optimize.linprog(c, **{k: (v or None) for k, v in kw.items()}, bounds=(0, None), method="highs")
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert ours.status == expected
    if expected == "optimal":
        assert abs(float(ours.fun) - ref.fun) < 1e-7
        for row, rhs in zip(kw.get("A_ub", []), kw.get("b_ub", [])):
            assert sum(a * x for a, x in zip(row, ours.x)) <= rhs
        assert all(x >= 0 for x in ours.x)


def test_no_constraints_left():
    assert linprog_exact([1, 0]).fun == 0
    assert linprog_exact([-1]).status == "unbounded"
    assert linprog_exact([-2, 0], A_eq=[[0, 0]], b_eq=[0]).status == "unbounded"
