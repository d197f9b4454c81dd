"""Torus-invariant Q-divisors on complete toric surfaces.

A divisor is a coefficient vector indexed by the rays of its fan. The module
covers rounding, linear equivalence shifts, the intersection pairing, the
nef/ample/big tests and the section polytope with its dimension (the Iitaka
dimension of the divisor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .fan import Fan, locate_cone, minimal_resolution
from .lattice import det2, dot, format_rational, solve2

NEG_INF = -math.inf


class InvariantError(AssertionError):
    """An internal consistency check between two computation paths failed."""


@dataclass(frozen=True)
class TDivisor:
    fan: Fan
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.fan):
            raise ValueError(f"{len(self.coeffs)} coefficients for a fan with {len(self.fan)} rays")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i % len(self.coeffs)]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: TDivisor) -> None:
        if self.fan != other.fan:
            raise ValueError("divisors live on different fans")

    def __add__(self, other: TDivisor) -> TDivisor:
        self._check(other)
        return TDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TDivisor) -> TDivisor:
        self._check(other)
        return TDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TDivisor:
        return TDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, t) -> TDivisor:
        return TDivisor(self.fan, tuple(t * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(a) for a in self.coeffs) + ")"


def divisor(fan: Fan, coeffs) -> TDivisor:
    return TDivisor(fan, tuple(Fraction(c) for c in coeffs))


def zero(fan: Fan) -> TDivisor:
    return TDivisor(fan, (Fraction(0),) * len(fan))


def ray_divisor(fan: Fan, i: int) -> TDivisor:
    i %= len(fan)
    return TDivisor(fan, tuple(Fraction(int(j == i)) for j in range(len(fan))))


def canonical(fan: Fan) -> TDivisor:
    return TDivisor(fan, (Fraction(-1),) * len(fan))


def round_up(D: TDivisor) -> TDivisor:
    return TDivisor(D.fan, tuple(Fraction(math.ceil(a)) for a in D.coeffs))


def round_down(D: TDivisor) -> TDivisor:
    return TDivisor(D.fan, tuple(Fraction(math.floor(a)) for a in D.coeffs))


def linear_shift(D: TDivisor, m) -> TDivisor:
    """Add div(chi^m); the result is linearly equivalent to ``D``."""
    return TDivisor(D.fan, tuple(a + dot(m, u) for a, u in zip(D.coeffs, D.fan.rays)))


def is_effective(D: TDivisor) -> bool:
    return all(a >= 0 for a in D.coeffs)


# --- intersection theory -------------------------------------------------


def ray_intersection(fan: Fan, i: int, j: int) -> Fraction:
    """D_i . D_j for the torus-invariant curves of ``fan``."""
    n = len(fan)
    i %= n
    j %= n
    if i == j:
        prev, cur, nxt = fan.ray(i - 1), fan.ray(i), fan.ray(i + 1)
        return Fraction(-det2(prev, nxt), det2(prev, cur) * det2(cur, nxt))
    if j == (i + 1) % n:
        return Fraction(1, det2(fan.ray(i), fan.ray(j)))
    if i == (j + 1) % n:
        return Fraction(1, det2(fan.ray(j), fan.ray(i)))
    return Fraction(0)


@lru_cache(maxsize=4096)
def intersection_matrix(fan: Fan) -> tuple[tuple[Fraction, ...], ...]:
    n = len(fan)
    return tuple(tuple(ray_intersection(fan, i, j) for j in range(n)) for i in range(n))


def self_intersection(fan: Fan, i: int) -> Fraction:
    return ray_intersection(fan, i, i)


def degrees(D: TDivisor) -> tuple[Fraction, ...]:
    """The vector (D . D_j)_j."""
    M = intersection_matrix(D.fan)
    n = len(D)
    return tuple(sum((D.coeffs[i] * M[i][j] for i in range(n) if M[i][j]), Fraction(0)) for j in range(n))


def intersect(D: TDivisor, E: TDivisor) -> Fraction:
    D._check(E)
    return sum((b * d for b, d in zip(E.coeffs, degrees(D))), Fraction(0))


def is_nef(D: TDivisor) -> bool:
    return all(d >= 0 for d in degrees(D))


def is_ample(D: TDivisor) -> bool:
    return all(d > 0 for d in degrees(D))


def cartier_data(D: TDivisor) -> list[tuple[Fraction, Fraction]]:
    """Per-cone characters m_i with <m_i, u_i> = -a_i and <m_i, u_{i+1}> = -a_{i+1}."""
    fan = D.fan
    out = []
    for i in range(len(fan)):
        u, v = fan.ray(i), fan.ray(i + 1)
        out.append(solve2(u[0], u[1], v[0], v[1], -D[i], -D[i + 1]))
    return out


def is_nef_cartier(D: TDivisor) -> bool:
    """Nefness via convexity of the support function, independent of intersections."""
    rays = D.fan.rays
    return all(
        dot(m, u) >= -a
        for m in cartier_data(D)
        for u, a in zip(rays, D.coeffs)
    )


def is_ample_cartier(D: TDivisor) -> bool:
    n = len(D)
    for i, m in enumerate(cartier_data(D)):
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            if dot(m, D.fan.rays[j]) <= -D.coeffs[j]:
                return False
    return True


# --- section polytope ----------------------------------------------------


@dataclass(frozen=True)
class Polytope2:
    """{x : <x, normal_i> >= -bound_i}, bounded because the fan is complete."""

    normals: tuple
    bounds: tuple[Fraction, ...]

    def contains(self, x) -> bool:
        return all(dot(x, u) >= -b for u, b in zip(self.normals, self.bounds))

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, Fraction], ...]:
        pts = set()
        for (u, a), (v, b) in combinations(zip(self.normals, self.bounds), 2):
            if det2(u, v) == 0:
                continue
            p = solve2(u[0], u[1], v[0], v[1], -a, -b)
            if self.contains(p):
                pts.add(p)
        return tuple(sorted(pts))

    @cached_property
    def dimension(self):
        vs = self.vertices
        if not vs:
            return NEG_INF
        if len(vs) == 1:
            return 0
        p0, p1 = vs[0], vs[1]
        d = (p1[0] - p0[0], p1[1] - p0[1])
        for q in vs[2:]:
            if det2(d, (q[0] - p0[0], q[1] - p0[1])) != 0:
                return 2
        return 1

    def row_range(self, y) -> tuple[Fraction, Fraction] | None:
        """Exact x-interval of the slice at height ``y``, or None if empty."""
        lo, hi = None, None
        for u, b in zip(self.normals, self.bounds):
            # u.x * x >= -b - u.y * y
            rhs = -b - u[1] * y
            if u[0] == 0:
                if rhs > 0:
                    return None
            elif u[0] > 0:
                t = Fraction(rhs, u[0])
                lo = t if lo is None or t > lo else lo
            else:
                t = Fraction(rhs, u[0])
                hi = t if hi is None or t < hi else hi
        if lo is None or hi is None or lo > hi:
            return None
        return lo, hi

    def lattice_points(self):
        vs = self.vertices
        if not vs:
            return
        y0 = math.ceil(min(p[1] for p in vs))
        y1 = math.floor(max(p[1] for p in vs))
        for y in range(y0, y1 + 1):
            r = self.row_range(y)
            if r is None:
                continue
            for x in range(math.ceil(r[0]), math.floor(r[1]) + 1):
                yield (x, y)

    def count_lattice_points(self) -> int:
        vs = self.vertices
        if not vs:
            return 0
        total = 0
        for y in range(math.ceil(min(p[1] for p in vs)), math.floor(max(p[1] for p in vs)) + 1):
            r = self.row_range(y)
            if r is not None:
                total += max(0, math.floor(r[1]) - math.ceil(r[0]) + 1)
        return total


def polytope(D: TDivisor) -> Polytope2:
    return Polytope2(D.fan.rays, D.coeffs)


def iitaka_dimension(D: TDivisor):
    """Dimension of P_D; P_{mD} = m P_D, so this is kappa(X, D) (``-inf`` if empty)."""
    return polytope(D).dimension


def is_big(D: TDivisor) -> bool:
    big = iitaka_dimension(D) == 2
    if is_nef(D) and big != (intersect(D, D) > 0):
        raise InvariantError(f"nef divisor {D}: kappa says big={big} but D^2 = {intersect(D, D)}")
    return big


def pullback_to_resolution(D: TDivisor) -> TDivisor:
    """pi^* D on the minimal resolution (coefficients interpolated along each cone)."""
    fan = D.fan
    smooth, _ = minimal_resolution(fan)
    coeffs = []
    for v in smooth.rays:
        i = locate_cone(fan, v)
        u, w = fan.ray(i), fan.ray(i + 1)
        d = det2(u, w)
        coeffs.append(Fraction(det2(v, w), d) * D[i] + Fraction(det2(u, v), d) * D[i + 1])
    return TDivisor(smooth, tuple(coeffs))
