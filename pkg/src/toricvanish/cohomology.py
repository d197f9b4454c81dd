"""Sheaf cohomology of torus-invariant Weil divisors on toric surfaces.

H^p(X, O(D)) splits into weight spaces indexed by characters m. For a fixed
m, let V_m be the subgraph of the ray cycle spanned by the rays with
<m, u_i> + a_i < 0. The weight-m piece of H^p is the reduced (p-1)-st
cohomology of V_m: an empty V_m gives a section, the full cycle gives a
class in H^2, and otherwise every extra connected component gives a class
in H^1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .divisors import TDivisor, canonical, intersect, polytope, pullback_to_resolution, round_down
from .fan import Fan, is_smooth
from .lattice import det2, dot, solve2


class NonIntegralDivisorError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyTable:
    h0: int
    h1: int
    h2: int

    @property
    def euler(self) -> int:
        return self.h0 - self.h1 + self.h2

    def __getitem__(self, i: int) -> int:
        return (self.h0, self.h1, self.h2)[i]

    def __str__(self) -> str:
        return f"h0={self.h0} h1={self.h1} h2={self.h2} chi={self.euler}"


@dataclass(frozen=True)
class WeightContribution:
    weight: tuple[int, int]
    target: str  # "h0", "h1" or "h2"
    count: int


def _require_integral(D: TDivisor) -> None:
    if not D.is_integral():
        raise NonIntegralDivisorError(f"cohomology needs an integral divisor, got {D}")


def _classify(signs) -> tuple[str, int]:
    n = len(signs)
    k = sum(signs)
    if k == 0:
        return "h0", 1
    if k == n:
        return "h2", 1
    # components of a proper subset of a cycle = number of arc starts
    components = sum(1 for i in range(n) if signs[i] and not signs[i - 1])
    return "h1", components - 1


def weight_contribution(fan: Fan, D: TDivisor, m) -> WeightContribution:
    _require_integral(D)
    signs = [dot(m, u) + a < 0 for u, a in zip(fan.rays, D.coeffs)]
    target, count = _classify(signs)
    return WeightContribution((m[0], m[1]), target, count)


def enumeration_box(fan: Fan, D: TDivisor, padding: int = 1) -> tuple[int, int, int, int]:
    """Integer box (xmin, xmax, ymin, ymax) around all vertices of the line arrangement.

    Weights outside contribute nothing: they lie in an unbounded face of the
    arrangement, whose negative support is a nonempty proper arc of rays.
    """
    xs, ys = [], []
    for (u, a), (v, b) in combinations(zip(fan.rays, D.coeffs), 2):
        if det2(u, v) == 0:
            continue
        p = solve2(u[0], u[1], v[0], v[1], -a, -b)
        xs.append(p[0])
        ys.append(p[1])
    return (
        math.floor(min(xs)) - padding,
        math.ceil(max(xs)) + padding,
        math.floor(min(ys)) - padding,
        math.ceil(max(ys)) + padding,
    )


def _row_segments(fan: Fan, D: TDivisor, y: int, xmin: int, xmax: int):
    """Split the row at height y into maximal x-runs with a constant sign vector."""
    cuts = {xmin, xmax + 1}
    for u, a in zip(fan.rays, D.coeffs):
        c = -a - u[1] * y  # negative iff u.x * x < c
        if u[0] > 0:
            t = math.ceil(Fraction(c, u[0]))  # negative iff x < t
        elif u[0] < 0:
            t = math.floor(Fraction(c, u[0])) + 1  # negative iff x >= t
        else:
            continue
        if xmin < t <= xmax:
            cuts.add(t)
    cuts = sorted(cuts)
    for lo, hi in zip(cuts, cuts[1:]):
        yield lo, hi - lo


def cohomology(fan: Fan, D: TDivisor, padding: int = 1, method: str = "rows") -> CohomologyTable:
    """Dimensions (h0, h1, h2) of H^i(X, O_X(D)) for an integral divisor.

    ``method="scan"`` visits every weight of the box one by one; the default
    ``"rows"`` groups each row into runs of weights sharing a sign vector.
    """
    _require_integral(D)
    if D.fan != fan:
        raise ValueError("divisor does not live on this fan")
    xmin, xmax, ymin, ymax = enumeration_box(fan, D, padding)
    totals = {"h0": 0, "h1": 0, "h2": 0}
    rays, coeffs = fan.rays, D.coeffs
    for y in range(ymin, ymax + 1):
        if method == "scan":
            runs = ((x, 1) for x in range(xmin, xmax + 1))
        else:
            runs = _row_segments(fan, D, y, xmin, xmax)
        for x, length in runs:
            signs = [u[0] * x + u[1] * y + a < 0 for u, a in zip(rays, coeffs)]
            target, count = _classify(signs)
            totals[target] += count * length
    return CohomologyTable(totals["h0"], totals["h1"], totals["h2"])


def euler_characteristic(fan: Fan, D: TDivisor) -> int:
    """Riemann-Roch: chi(O(D)) = 1 + D.(D - K)/2 on a smooth complete toric surface."""
    _require_integral(D)
    if not is_smooth(fan):
        raise ValueError("Riemann-Roch check is only asserted on smooth fans")
    value = 1 + intersect(D, D - canonical(fan)) / 2
    if value.denominator != 1:
        raise AssertionError(f"non-integral Euler characteristic {value}")
    return int(value)


def h0_lattice_count(fan: Fan, D: TDivisor) -> int:
    """Independent h0: number of lattice points of the section polytope."""
    _require_integral(D)
    return polytope(D).count_lattice_points()


def euler_via_resolution(fan: Fan, D: TDivisor) -> int:
    """chi(O(D)) on a possibly singular fan, via Riemann-Roch for floor(pi^* D) upstairs.

    Toric surface singularities are rational and pi_* O(floor(pi^* D)) = O(D),
    so both Euler characteristics agree.
    """
    _require_integral(D)
    L = round_down(pullback_to_resolution(D))
    return euler_characteristic(L.fan, L)
