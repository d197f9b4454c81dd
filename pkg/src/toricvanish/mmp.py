"""The D-minimal model program on complete toric surfaces.

Every step is a divisorial contraction (removing a ray); flips cannot occur
in dimension two. The run stops when D is nef, when a D-negative fibration
over P^1 appears on a Picard-rank-two surface, or on a Picard-rank-one
surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import CohomologyTable, cohomology
from .divisors import (
    InvariantError,
    TDivisor,
    canonical,
    degrees,
    intersection_matrix,
    is_ample,
    is_nef,
    ray_divisor,
    self_intersection,
)
from .fan import Fan, NotContractibleError, picard_rank, remove_ray
from .lattice import LatticeVector, det2
from .lp import is_feasible


class NoExtremalRayError(ValueError):
    pass


class CohomologyChangedError(InvariantError):
    """A contraction with D.E < 0 changed the cohomology table of D."""

    def __init__(self, message: str, step: "MMPStep"):
        super().__init__(message)
        self.step = step


def curve_classes(fan: Fan) -> list[list[Fraction]]:
    """Row i is the numerical class of D_i, i.e. (D_i . D_j)_j."""
    return [list(row) for row in intersection_matrix(fan)]


def matrix_rank(rows) -> int:
    M = [[Fraction(v) for v in r] for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _parallel(a, b) -> bool:
    # positive multiples of each other
    pairs = [(x, y) for x, y in zip(a, b) if x or y]
    if not pairs:
        return True
    x0, y0 = pairs[0]
    if x0 == 0 or y0 == 0 or (x0 > 0) != (y0 > 0):
        return False
    return all(x * y0 == y * x0 for x, y in pairs)


def mori_extremal_curves(fan: Fan) -> list[int]:
    """Indices of torus-invariant curves spanning extremal rays of the Mori cone.

    Row i is extremal iff it is not a nonnegative combination of the rows
    that are not positive multiples of it (exact LP feasibility).
    """
    rows = curve_classes(fan)
    n = len(rows)
    out = []
    for k in range(n):
        others = [rows[j] for j in range(n) if j != k and not _parallel(rows[j], rows[k])]
        if not others:
            out.append(k)
            continue
        A_eq = [[others[j][c] for j in range(len(others))] for c in range(n)]
        if not is_feasible(A_eq=A_eq, b_eq=rows[k], n=len(others)):
            out.append(k)
    return out


@dataclass(frozen=True)
class Selection:
    kind: str  # "contract", "fiber" or "rank_one"
    index: int | None
    fallback: bool = False


def select_extremal(fan: Fan, D: TDivisor) -> Selection:
    """Pick the D-negative extremal ray to act on; ties go to the smallest ray index."""
    degs = degrees(D)
    negative = [i for i, d in enumerate(degs) if d < 0]
    if not negative:
        raise NoExtremalRayError("no extremal ray: D is nef")
    for i in negative:
        if self_intersection(fan, i) < 0:
            return Selection("contract", i)
    if picard_rank(fan) == 2:
        for i in negative:
            if self_intersection(fan, i) == 0:
                return Selection("fiber", i)
    if len(fan) == 3:
        return Selection("rank_one", None)
    for i in mori_extremal_curves(fan):
        if degs[i] < 0:
            e2 = self_intersection(fan, i)
            if e2 < 0:
                return Selection("contract", i, fallback=True)
            if e2 == 0 and picard_rank(fan) == 2:
                return Selection("fiber", i, fallback=True)
    raise InvariantError(f"no D-negative extremal ray found for {D} on {fan}")


def pushforward(D: TDivisor, i: int) -> TDivisor:
    """Strict transform of D after contracting the curve of ray i."""
    fan = remove_ray(D.fan, i)
    return TDivisor(fan, D.coeffs[:i] + D.coeffs[i + 1:])


@dataclass(frozen=True)
class MMPStep:
    index: int
    ray: LatticeVector
    fan_before: Fan
    fan_after: Fan
    divisor_before: TDivisor
    divisor_after: TDivisor
    degree: Fraction  # D.E
    e_squared: Fraction
    adjoint_positive: bool = False  # (D - K).E > E^2, i.e. R^1 f_* O(D) = 0
    table_before: CohomologyTable | None = None
    table_after: CohomologyTable | None = None

    @property
    def preserved(self) -> bool | None:
        if self.table_before is None:
            return None
        return self.table_before == self.table_after


@dataclass(frozen=True)
class MinimalModel:
    name = "minimal-model"


@dataclass(frozen=True)
class MoriFiberSpace:
    fiber_index: int
    fiber_pair: tuple[LatticeVector, LatticeVector]
    fiber_class: TDivisor
    name = "mori-fiber-space"


@dataclass(frozen=True)
class RankOne:
    minus_d_ample: bool
    name = "rank-one"


@dataclass
class MMPTrace:
    steps: list[MMPStep] = field(default_factory=list)
    outcome: MinimalModel | MoriFiberSpace | RankOne | None = None
    final_fan: Fan | None = None
    final_divisor: TDivisor | None = None
    fallback_used: int = 0


def run_mmp(fan: Fan, D: TDivisor, check_cohomology: bool = False, strict: bool = True) -> MMPTrace:
    """Run the D-MMP, contracting the lowest-index D-negative curve with E^2 < 0 first.

    With ``check_cohomology`` (integral D only) each step records the tables
    before and after; ``strict`` raises :class:`CohomologyChangedError` on
    the first step whose table changes.
    """
    if D.fan != fan:
        raise ValueError("divisor does not live on this fan")
    n0 = len(fan)
    trace = MMPTrace()
    check = check_cohomology and D.is_integral()
    while True:
        if is_nef(D):
            trace.outcome = MinimalModel()
            break
        sel = select_extremal(fan, D)
        trace.fallback_used += sel.fallback
        if sel.kind == "fiber":
            i = sel.index
            w = fan.ray(i - 1)
            trace.outcome = MoriFiberSpace(i, (w, LatticeVector(-w[0], -w[1])), ray_divisor(fan, i))
            break
        if sel.kind == "rank_one":
            trace.outcome = RankOne(is_ample(-D))
            break
        i = sel.index
        e2 = self_intersection(fan, i)
        deg = degrees(D)[i]
        convex = det2(fan.ray(i - 1), fan.ray(i + 1)) > 0
        if convex != (e2 < 0) or deg >= 0:
            raise InvariantError(f"bad contraction of ray {fan.ray(i)}: E^2={e2}, D.E={deg}")
        try:
            D_after = pushforward(D, i)
        except NotContractibleError as exc:
            raise InvariantError(f"E^2 < 0 but ray {fan.ray(i)} not contractible") from exc
        before = after = None
        if check:
            before = cohomology(fan, D)
            after = cohomology(D_after.fan, D_after)
        adjoint = deg - degrees(canonical(fan))[i] > e2
        step = MMPStep(i, fan.ray(i), fan, D_after.fan, D, D_after, deg, e2, adjoint, before, after)
        trace.steps.append(step)
        if check and strict and before != after:
            raise CohomologyChangedError(
                f"cohomology changed contracting {fan.ray(i)} on {fan} with D={D}: {before} -> {after}",
                step,
            )
        fan, D = D_after.fan, D_after
        if len(trace.steps) > n0 - 3:
            raise InvariantError("MMP exceeded N0 - 3 steps")
    trace.final_fan, trace.final_divisor = fan, D
    return trace
