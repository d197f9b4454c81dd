"""Complete simplicial fans in the plane.

A fan is stored as its counterclockwise list of primitive ray generators;
the maximal cones are the consecutive pairs ``(u_i, u_{i+1})`` with indices
taken mod ``N``. Rank-2 cones are always simplicial, so every surface built
here is Q-factorial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    LatticeVector,
    ccw_compare,
    det2,
    hj_continued_fraction,
    is_primitive,
    primitivize,
)


class FanError(ValueError):
    pass


class NonPrimitiveRayError(FanError):
    pass


class DuplicateDirectionError(FanError):
    pass


class NotCounterclockwiseError(FanError):
    """Some consecutive pair has det <= 0, or the rays wind more than once."""


class NotContractibleError(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple[LatticeVector, ...]

    def __len__(self) -> int:
        return len(self.rays)

    def ray(self, i: int) -> LatticeVector:
        return self.rays[i % len(self.rays)]

    def cones(self) -> list[tuple[LatticeVector, LatticeVector]]:
        return [(self.ray(i), self.ray(i + 1)) for i in range(len(self))]

    def index_of(self, v) -> int:
        return self.rays.index(LatticeVector(*v))

    def __str__(self) -> str:
        return "[" + ",".join(str(u) for u in self.rays) + "]"


def validate(raw_rays) -> Fan:
    """Check the fan invariants and return a :class:`Fan` in the given order.

    Unordered input is rejected, never re-sorted: divisor coefficients are
    positional and a silent permutation would corrupt them.
    """
    rays = tuple(LatticeVector(int(r[0]), int(r[1])) for r in raw_rays)
    n = len(rays)
    if n < 3:
        raise FanError(f"a complete fan needs at least 3 rays, got {n}")
    for r in rays:
        if not is_primitive(r):
            raise NonPrimitiveRayError(f"ray {r} is not primitive")
    for i in range(n):
        for j in range(i + 1, n):
            if ccw_compare(rays[i], rays[j]) == 0:
                raise DuplicateDirectionError(f"rays {rays[i]} and {rays[j]} share a direction")
    wraps = 0
    for i in range(n):
        u, v = rays[i], rays[(i + 1) % n]
        if det2(u, v) <= 0:
            raise NotCounterclockwiseError(
                f"det({u}, {v}) = {det2(u, v)} <= 0: rays not strictly ccw or fan not complete"
            )
        if ccw_compare(u, v) > 0:
            wraps += 1
    if wraps != 1:
        raise NotCounterclockwiseError(f"rays wind {wraps} times around the origin")
    return Fan(rays)


def projective_plane() -> Fan:
    return validate([(1, 0), (0, 1), (-1, -1)])


def p1xp1() -> Fan:
    return validate([(1, 0), (0, 1), (-1, 0), (0, -1)])


def hirzebruch(a: int) -> Fan:
    return validate([(1, 0), (0, 1), (-1, a), (0, -1)])


def cone_multiplicity(fan: Fan, i: int) -> int:
    return det2(fan.ray(i), fan.ray(i + 1))


def is_smooth(fan: Fan) -> bool:
    return all(cone_multiplicity(fan, i) == 1 for i in range(len(fan)))


def picard_rank(fan: Fan) -> int:
    return len(fan) - 2


def remove_ray(fan: Fan, i: int) -> Fan:
    """Merge the two cones around ray ``i`` (a divisorial contraction)."""
    n = len(fan)
    i %= n
    if det2(fan.ray(i - 1), fan.ray(i + 1)) <= 0:
        raise NotContractibleError(
            f"curve not contractible: neighbours of {fan.ray(i)} span an angle >= 180 degrees"
        )
    return validate(fan.rays[:i] + fan.rays[i + 1:])


def locate_cone(fan: Fan, v) -> int:
    """Index ``i`` of a cone (u_i, u_{i+1}) containing ``v`` (boundary included)."""
    for i in range(len(fan)):
        if det2(fan.ray(i), v) >= 0 and det2(v, fan.ray(i + 1)) > 0:
            return i
    raise ValueError(f"{v} lies in no cone")


def insert_ray(fan: Fan, v) -> Fan:
    """Star subdivision at the primitive vector ``v``."""
    v = LatticeVector(int(v[0]), int(v[1]))
    if not is_primitive(v):
        raise NonPrimitiveRayError(f"ray {v} is not primitive")
    for u in fan.rays:
        if ccw_compare(u, v) == 0:
            raise DuplicateDirectionError(f"{v} is already a ray of the fan")
    i = locate_cone(fan, v)
    return validate(fan.rays[: i + 1] + (v,) + fan.rays[i + 1:])


def cone_type(u, v) -> tuple[int, int, LatticeVector]:
    """Cyclic quotient type (d, k) of the ccw cone (u, v), plus the first HJ ray.

    With ``w1 = (v + k*u) / d`` the pair (u, w1) is a lattice basis in which the
    cone is spanned by (1, 0) and (-k, d); k is the residue in [0, d).
    """
    d = det2(u, v)
    if d <= 0:
        raise ValueError(f"({u}, {v}) is not a strictly convex ccw cone")
    # complete u to a basis (u, u2) with det(u, u2) = 1
    u2 = _basis_complement(u)
    alpha = det2(v, u2)
    k = (-alpha) % d
    w1 = LatticeVector((v[0] + k * u[0]) // d, (v[1] + k * u[1]) // d)
    return d, k, w1


def _basis_complement(u) -> LatticeVector:
    # extended Euclid: s*u.x + t*u.y = 1  =>  det(u, (-t, s)) = 1
    a, b = u
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return LatticeVector(-old_t, old_s)


def hj_rays(u, v) -> list[LatticeVector]:
    """Interior rays of the minimal resolution of the cone (u, v), ccw order."""
    d, k, w1 = cone_type(u, v)
    if d == 1:
        return []
    bs = hj_continued_fraction(d, k)
    prev, cur = LatticeVector(*u), w1
    out = []
    for b in bs:
        out.append(cur)
        prev, cur = cur, LatticeVector(b * cur[0] - prev[0], b * cur[1] - prev[1])
    if cur != tuple(v):
        raise AssertionError(f"HJ recursion for {u},{v} ended at {cur}")
    return out


def minimal_resolution(fan: Fan) -> tuple[Fan, list[tuple[LatticeVector, tuple[LatticeVector, LatticeVector]]]]:
    rays: list[LatticeVector] = []
    inserted = []
    for u, v in fan.cones():
        rays.append(u)
        for w in hj_rays(u, v):
            rays.append(w)
            inserted.append((w, (u, v)))
    return validate(rays), inserted


def primitive_sum(u, v) -> LatticeVector:
    return primitivize((u[0] + v[0], u[1] + v[1]))[0]
