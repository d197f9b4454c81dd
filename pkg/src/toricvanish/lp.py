"""A small exact two-phase simplex over Fractions (Bland's rule, so it terminates).

Solves  min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list[Fraction] | None = None
    fun: Fraction | None = None


def _pivot(T, basis, r, c):
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, cost, allowed):
    ncols = len(allowed)
    while True:
        enter = None
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            rc = cost[j] - sum(cost[b] * T[i][j] for i, b in enumerate(basis) if cost[b])
            if rc < 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave, best = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def linprog_exact(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    n = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b), True) for a, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in a], Fraction(b), False) for a, b in zip(A_eq, b_eq)]
    n_slack = sum(1 for _, _, ub in rows if ub)
    # columns: x (n) | slacks | artificials
    T, basis, artificial = [], [], []
    slack_col = n
    n_art = sum(1 for a, b, ub in rows if not (ub and b >= 0))
    width = n + n_slack + n_art
    art_col = n + n_slack
    for a, b, ub in rows:
        row = a + [Fraction(0)] * (width - n) + [b]
        s = None
        if ub:
            s = slack_col
            row[s] = Fraction(1)
            slack_col += 1
        if b < 0:
            row = [-v for v in row]
        if ub and b >= 0:
            basis.append(s)
        else:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            artificial.append(art_col)
            art_col += 1
        T.append(row)

    allowed = [True] * width
    if artificial:
        cost1 = [Fraction(0)] * width
        for j in artificial:
            cost1[j] = Fraction(1)
        _run(T, basis, cost1, allowed)
        if sum(T[i][-1] for i, b in enumerate(basis) if b in artificial) > 0:
            return LPResult("infeasible")
        art = set(artificial)
        for i in reversed(range(len(T))):
            if basis[i] in art:
                for j in range(art_col - n_art):
                    if T[i][j]:
                        _pivot(T, basis, i, j)
                        break
                else:
                    del T[i], basis[i]
        for j in artificial:
            allowed[j] = False

    cost = [Fraction(v) for v in c] + [Fraction(0)] * (width - n)
    status = _run(T, basis, cost, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    x = x[:n]
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0)))


def is_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n=None) -> bool:
    if n is None:
        n = len((list(A_ub) + list(A_eq))[0])
    return linprog_exact([0] * n, A_ub, b_ub, A_eq, b_eq).status == "optimal"
