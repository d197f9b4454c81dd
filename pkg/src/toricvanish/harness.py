"""Randomized end-to-end checks of the two vanishing theorems.

Every trial draws its randomness from ``random.Random((seed << 32) ^ trial)``
(CPython's Mersenne Twister, stable across runs and platforms), so a trial
can be replayed from ``(seed, trial)`` alone and summaries do not depend on
how trials are scheduled.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, partial
from math import lcm

from .cohomology import (
    CohomologyTable,
    cohomology,
    euler_characteristic,
    euler_via_resolution,
    h0_lattice_count,
)
from .divisors import (
    InvariantError,
    TDivisor,
    canonical,
    degrees,
    divisor,
    intersect,
    intersection_matrix,
    iitaka_dimension,
    is_ample,
    is_ample_cartier,
    is_big,
    is_effective,
    is_nef,
    is_nef_cartier,
    linear_shift,
    polytope,
    round_up,
    zero,
)
from .fan import Fan, insert_ray, is_smooth, minimal_resolution, p1xp1, validate
from .lattice import ccw_compare, det2, is_primitive, primitivize, rot90
from .lp import linprog_exact
from .mmp import MinimalModel, MoriFiberSpace, RankOne, run_mmp
from .scene import SceneFile, emit_scene
from .singularities import PairBoundary, is_klt_combinatorial, is_klt_via_resolution

PASS, REJECTED, FAIL = "pass", "hypothesis-rejected", "FAIL"
MAX_SHIFT = 64


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random((seed << 32) ^ trial)


# --- instance generation -------------------------------------------------


def complete_rays(vectors) -> list:
    """Sort directions ccw and fill every gap of >= 180 degrees.

    A gap starting at u is filled with u rotated by 90 degrees, which lies
    strictly inside it; each insertion shrinks the largest gap.
    """
    rays = sorted({primitivize(v)[0] for v in vectors}, key=cmp_to_key(ccw_compare))
    if not rays:
        raise ValueError("need at least one direction")
    while True:
        for i, u in enumerate(rays):
            v = rays[(i + 1) % len(rays)]
            if len(rays) == 1 or det2(u, v) <= 0:
                rays.insert(i + 1, rot90(u))
                break
        else:
            return rays


def random_primitive(rng: random.Random, coord_bound: int):
    while True:
        v = (rng.randint(-coord_bound, coord_bound), rng.randint(-coord_bound, coord_bound))
        if is_primitive(v):
            return v


def random_fan(rng: random.Random, max_rays: int, coord_bound: int) -> Fan:
    if max_rays < 3 or coord_bound < 1:
        raise ValueError("need max_rays >= 3 and coord_bound >= 1")
    while True:
        k = rng.randint(3, max_rays)
        vectors = {random_primitive(rng, coord_bound) for _ in range(k)}
        rays = complete_rays(vectors)
        if len(rays) <= max_rays:
            return validate(rays)


def random_rational(rng: random.Random, lo, hi, max_denominator: int) -> Fraction:
    """Uniform-ish rational in [lo, hi) with denominator <= max_denominator."""
    q = rng.randint(1, max_denominator)
    return Fraction(rng.randrange(lo * q, hi * q), q)


def positive_rational(rng: random.Random, hi: int, max_denominator: int) -> Fraction:
    """Rational in (0, hi) with denominator <= max_denominator."""
    q = rng.randint(1, max_denominator)
    return Fraction(rng.randrange(1, hi * q), q)


def find_ample(fan: Fan) -> TDivisor:
    """An integral ample divisor: min sum(a) s.t. a >= 0 and (sum a_i D_i).D_j >= 1."""
    n = len(fan)
    M = intersection_matrix(fan)
    A_ub = [[-M[i][j] for i in range(n)] for j in range(n)]
    res = linprog_exact([1] * n, A_ub=A_ub, b_ub=[-1] * n)
    if res.status != "optimal":
        raise InvariantError(f"no ample divisor found on {fan}: LP {res.status}")
    scale = lcm(*(a.denominator for a in res.x))
    H = divisor(fan, [a * scale for a in res.x])
    if not is_ample(H) or not H.is_integral():
        raise InvariantError(f"LP output {H} is not an integral ample divisor")
    return H


def random_rational_point(rng: random.Random, D: TDivisor, max_denominator: int):
    """A rational point of P_D: a random convex combination of two vertices."""
    vs = polytope(D).vertices
    p, q = rng.choice(vs), rng.choice(vs)
    t = random_rational(rng, 0, 1, max_denominator)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


# --- reports -------------------------------------------------------------


@dataclass
class TrialReport:
    seed: int
    trial: int
    fan: Fan
    D: TDivisor | None
    delta: tuple | None = None
    flags: dict = field(default_factory=dict)
    table: CohomologyTable | None = None
    kappa: object = None
    verdict: str = PASS
    note: str = ""
    mmp_checked: bool = False
    mmp_fallbacks: int = 0
    mmp_steps: int = 0

    def dump(self) -> str:
        """Re-runnable scene text for this instance."""
        scene = SceneFile([tuple(r) for r in self.fan.rays])
        if self.D is not None:
            scene.divisors["D"] = self.D.coeffs
        if self.delta is not None:
            scene.boundaries["Delta"] = tuple(self.delta)
        header = f"seed={self.seed} trial={self.trial} verdict={self.verdict}"
        if self.table is not None:
            header += f" {self.table}"
        if self.kappa is not None:
            header += f" kappa={self.kappa}"
        if self.note:
            header += f"\n{self.note}"
        return emit_scene(scene, header)


@dataclass
class VerificationSummary:
    attempted: int = 0
    rejected: int = 0
    passes: int = 0
    failures: int = 0
    wall_time: float = 0.0
    failure_reports: list = field(default_factory=list)
    kappa_histogram: Counter = field(default_factory=Counter)
    mmp_runs: int = 0
    mmp_steps: int = 0
    mmp_fallbacks: int = 0

    @classmethod
    def collect(cls, reports, wall_time: float = 0.0) -> VerificationSummary:
        s = cls(wall_time=wall_time)
        for r in reports:
            s.attempted += 1
            if r.verdict == PASS:
                s.passes += 1
                if r.kappa is not None:
                    s.kappa_histogram[r.kappa] += 1
            elif r.verdict == REJECTED:
                s.rejected += 1
            else:
                s.failures += 1
                s.failure_reports.append(r)
            s.mmp_runs += r.mmp_checked
            s.mmp_fallbacks += r.mmp_fallbacks
            s.mmp_steps += r.mmp_steps
        s.failure_reports.sort(key=lambda r: r.trial)
        return s

    def lines(self, timing: bool = True) -> list[str]:
        out = [
            f"attempted={self.attempted}",
            f"rejected={self.rejected}",
            f"passes={self.passes}",
        ]
        if self.kappa_histogram:
            out.append(
                "kappa_histogram=" + ",".join(f"{k}:{self.kappa_histogram.get(k, 0)}" for k in (0, 1, 2))
            )
        if self.mmp_runs:
            out.append(f"mmp_runs={self.mmp_runs}")
            out.append(f"mmp_steps={self.mmp_steps}")
            out.append(f"mmp_fallbacks={self.mmp_fallbacks}")
        if timing:
            out.append(f"wall_time={self.wall_time:.2f}s")
        out.append(f"failures={self.failures}")
        return out


def _run_trials(fn, trials: int, jobs: int) -> VerificationSummary:
    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(fn, range(trials), chunksize=8))
    else:
        reports = [fn(t) for t in range(trials)]
    return VerificationSummary.collect(reports, time.perf_counter() - start)


# --- Kawamata-Viehweg vanishing ------------------------------------------


def check_kv_instance(fan: Fan, delta, D: TDivisor, *, seed=0, trial=0, mmp=False) -> TrialReport:
    """Gate on klt + (D - K - Delta) nef and big, then assert h1 = h2 = 0."""
    pair = PairBoundary(fan, tuple(delta))
    report = TrialReport(seed, trial, fan, D, pair.delta)
    try:
        klt = is_klt_combinatorial(pair)
        if klt != is_klt_via_resolution(pair):
            raise InvariantError("klt criteria disagree")
        A = D - canonical(fan) - TDivisor(fan, pair.delta)
        nef = is_nef(A)
        if nef != is_nef_cartier(A):
            raise InvariantError("nef criteria disagree")
        big = is_big(A)
        report.flags = {"klt": klt, "nef": nef, "big": big, "integral": D.is_integral()}
        if not all(report.flags.values()):
            report.verdict = REJECTED
            return report
        report.table = cohomology(fan, D)
        if report.table.h1 or report.table.h2:
            report.verdict = FAIL
            report.note = f"vanishing violated: {report.table}"
            return report
        if mmp:
            trace = run_mmp(fan, D, check_cohomology=True)
            report.mmp_checked = True
            report.mmp_fallbacks = trace.fallback_used
            report.mmp_steps = len(trace.steps)
    except InvariantError as exc:
        report.verdict = FAIL
        report.note = f"internal invariant: {exc}"
    return report


def kv_trial(trial: int, seed: int, max_rays: int, coord_bound: int,
                    max_denominator: int, mmp_every: int = 5) -> TrialReport:
    rng = trial_rng(seed, trial)
    fan = random_fan(rng, max_rays, coord_bound)
    n = len(fan)
    delta = []
    for _ in range(n):
        delta.append(Fraction(0) if rng.random() < 0.3 else random_rational(rng, 0, 1, max_denominator))
    delta = TDivisor(fan, tuple(delta))
    H = find_ample(fan)
    # half the trials add a small integral perturbation so the nef condition
    # is often tight rather than comfortably ample
    R = zero(fan)
    if rng.random() < 0.5:
        R = divisor(fan, [rng.randint(-1, 1) for _ in range(n)])
    frac = round_up(delta) - delta
    for k in range(1, MAX_SHIFT + 1):
        A = frac + R + k * H
        if is_nef(A) and is_big(A):
            D = canonical(fan) + round_up(delta) + R + k * H
            return check_kv_instance(fan, delta.coeffs, D, seed=seed, trial=trial,
                                   mmp=mmp_every > 0 and trial % mmp_every == 0)
    return TrialReport(seed, trial, fan, None, delta.coeffs, verdict=REJECTED,
                       note=f"no shift n <= {MAX_SHIFT} makes the adjoint nef")


def random_kv_instance(rng: random.Random, fan: Fan, max_denominator: int, tries: int = 200):
    """Rejection-sample a small integral D with klt Delta and D - K - Delta nef and big.

    Unlike :func:`kv_trial` nothing pushes D towards nefness, so the D-MMP of
    these instances usually has to contract curves.
    """
    n = len(fan)
    for _ in range(tries):
        delta = TDivisor(fan, tuple(random_rational(rng, 0, 1, max_denominator) for _ in range(n)))
        D = _small_integral(rng, fan, 3)
        A = D - canonical(fan) - delta
        if is_nef(A) and is_big(A):
            return delta, D
    return None


def verify_kv_vanishing(trials: int, seed: int, max_rays: int, coord_bound: int,
                     max_denominator: int, jobs: int = 1) -> VerificationSummary:
    fn = partial(kv_trial, seed=seed, max_rays=max_rays, coord_bound=coord_bound,
                 max_denominator=max_denominator)
    return _run_trials(fn, trials, jobs)


# --- vanishing for K + round_up(D) ---------------------------------------


def check_adjoint_instance(fan: Fan, D: TDivisor, *, seed=0, trial=0) -> TrialReport:
    """Gate on D effective, nef and (X, round_up(D) - D) klt; then h^i = 0 for i != 2 - kappa."""
    report = TrialReport(seed, trial, fan, D)
    try:
        boundary = round_up(D) - D
        pair = PairBoundary(fan, boundary.coeffs)
        klt = is_klt_combinatorial(pair)
        if klt != is_klt_via_resolution(pair):
            raise InvariantError("klt criteria disagree")
        nef = is_nef(D)
        if nef != is_nef_cartier(D):
            raise InvariantError("nef criteria disagree")
        report.flags = {"effective": is_effective(D), "nef": nef, "klt": klt}
        if not all(report.flags.values()):
            report.verdict = REJECTED
            return report
        kappa = iitaka_dimension(D)
        if kappa not in (0, 1, 2):
            raise InvariantError(f"effective divisor with kappa={kappa}")
        report.kappa = kappa
        report.table = cohomology(fan, canonical(fan) + round_up(D))
        bad = [i for i in range(3) if i != 2 - kappa and report.table[i]]
        if bad:
            report.verdict = FAIL
            report.note = f"h^{bad} nonzero with kappa={kappa}: {report.table}"
    except InvariantError as exc:
        report.verdict = FAIL
        report.note = f"internal invariant: {exc}"
    return report


def fiber_divisor(fan: Fan, i: int) -> TDivisor:
    """Pullback of a point under the projection killing the line of ray i.

    Needs -u_i to be a ray too; the result is effective, nef, with kappa = 1.
    """
    u = fan.ray(i)
    m = rot90(u)
    return divisor(fan, [max(m[0] * r[0] + m[1] * r[1], 0) for r in fan.rays])


def random_nef_effective(rng: random.Random, fan: Fan, max_denominator: int):
    """Sample an effective nef Q-divisor; returns (fan, D), the fan may gain a ray."""
    mode = rng.random()
    n = len(fan)
    if mode < 0.1:
        return fan, zero(fan)
    if mode < 0.4:
        u = rng.choice(fan.rays)
        opposite = (-u[0], -u[1])
        if opposite not in fan.rays:
            fan = insert_ray(fan, opposite)
        F = fiber_divisor(fan, fan.index_of(u))
        c = positive_rational(rng, 4, max_denominator)
        D = c * F
        return fan, linear_shift(D, random_rational_point(rng, D, max_denominator))
    for _ in range(50):
        D = divisor(fan, [random_rational(rng, 0, 3, max_denominator) for _ in range(n)])
        if is_nef(D):
            return fan, D
    H = find_ample(fan)
    t = positive_rational(rng, 3, max_denominator)
    for scale in (1, 2, 4, 8, 16):
        P = divisor(fan, [random_rational(rng, 0, 1, max_denominator) for _ in range(n)])
        D = t * scale * H + P
        if is_nef(D):
            return fan, linear_shift(D, random_rational_point(rng, D, max_denominator))
    return fan, t * H


def adjoint_trial(trial: int, seed: int, max_rays: int, coord_bound: int,
                    max_denominator: int) -> TrialReport:
    rng = trial_rng(seed, trial)
    fan = random_fan(rng, max_rays, coord_bound)
    fan, D = random_nef_effective(rng, fan, max_denominator)
    return check_adjoint_instance(fan, D, seed=seed, trial=trial)


def verify_adjoint_vanishing(trials: int, seed: int, max_rays: int, coord_bound: int,
                     max_denominator: int, jobs: int = 1) -> VerificationSummary:
    fn = partial(adjoint_trial, seed=seed, max_rays=max_rays, coord_bound=coord_bound,
                 max_denominator=max_denominator)
    return _run_trials(fn, trials, jobs)


# --- the P1 x P1 counterexample ------------------------------------------


@dataclass
class ExampleReport:
    kappa: object
    h0: int
    table: CohomologyTable
    shifted_table: CohomologyTable
    tables_equal: bool
    lines: list[str]

    @property
    def ok(self) -> bool:
        return self.kappa == 1 and self.h0 == 4 and self.tables_equal


def effectivity_counterexample() -> ExampleReport:
    """Effectivity cannot be dropped from the K + round_up(D) vanishing.

    On P1 x P1 take D = 3D1 + 3D2 - D'/2 with D' in |2(D1 + 3D2)|. D is
    Q-linearly equivalent to 2D1, so kappa = 1, yet h0(K + round_up(D)) = 4
    while the vanishing would force h0 = 0 since 0 != 2 - kappa.
    """
    X = p1xp1()
    two_d1 = divisor(X, [2, 0, 0, 0])
    kappa = iitaka_dimension(two_d1)
    round_up_d = divisor(X, [3, 3, 0, 0])
    adjoint = canonical(X) + round_up_d
    table = cohomology(X, adjoint)
    type_11 = divisor(X, [1, 1, 0, 0])
    shifted = linear_shift(type_11, (1, 1))
    if shifted != adjoint:
        raise InvariantError(f"shift of (1,1,0,0) by (1,1) is {shifted}, expected {adjoint}")
    shifted_table = cohomology(X, type_11)
    lines = [
        f"fan: {X}",
        f"kappa(X, 2D1) = {kappa}",
        f"K + roundup(D) = {adjoint}",
        f"cohomology(K + roundup(D)): {table}",
        f"(1,1,0,0) shifted by m=(1,1) = {shifted}; cohomology: {shifted_table}",
        f"h0 = {table.h0} != 0 although 0 != 2 - kappa = {2 - kappa}: effectivity is needed",
    ]
    return ExampleReport(kappa, table.h0, table, shifted_table, table == shifted_table, lines)


# --- module-level properties on random fans ------------------------------


@dataclass
class PropertyReport:
    counts: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.counts[name] += 1
        if not ok:
            self.violations.append(f"{name}: {detail}")

    def lines(self) -> list[str]:
        out = [f"{name}={self.counts[name]}" for name in sorted(self.counts)]
        out.append(f"violations={len(self.violations)}")
        return out + self.violations


def _small_integral(rng, fan, bound=2):
    return divisor(fan, [rng.randint(-bound, bound) for _ in range(len(fan))])


def property_trial(trial: int, seed: int, max_rays: int = 10, coord_bound: int = 5,
                   max_denominator: int = 6) -> PropertyReport:
    rng = trial_rng(seed, trial)
    rep = PropertyReport()
    fan = random_fan(rng, max_rays, coord_bound)
    tag = f"seed={seed} trial={trial} fan={fan}"
    n = len(fan)
    K = canonical(fan)

    # minimal resolution is smooth and agrees with one-at-a-time star subdivision
    smooth, inserted = minimal_resolution(fan)
    step = fan
    for w, _ in inserted:
        step = insert_ray(step, w)
    rep.check("resolution_smooth", is_smooth(smooth) and step == smooth, tag)

    # anticanonical bigness
    rep.check("anticanonical_big", iitaka_dimension(-K) == 2 and is_big(-K), tag)

    # klt agreement on random boundaries in [0, 2)
    for _ in range(3):
        pair = PairBoundary(fan, tuple(random_rational(rng, 0, 2, max_denominator) for _ in range(n)))
        rep.check("klt_agreement", is_klt_combinatorial(pair) == is_klt_via_resolution(pair),
                  f"{tag} delta={pair.delta}")

    H = find_ample(fan)
    rep.check("find_ample", is_ample(H) and is_ample_cartier(H), tag)

    # nef criteria, h0 oracle, shift invariance, box robustness
    for _ in range(3):
        D = _small_integral(rng, fan)
        if rng.random() < 0.5:
            D = D + H
        rep.check("nef_equivalence", is_nef(D) == is_nef_cartier(D), f"{tag} D={D}")
        rep.check("ample_equivalence", is_ample(D) == is_ample_cartier(D), f"{tag} D={D}")
        T = cohomology(fan, D)
        rep.check("h0_lattice_count", T.h0 == h0_lattice_count(fan, D), f"{tag} D={D}")
        m = (rng.randint(-3, 3), rng.randint(-3, 3))
        rep.check("shift_invariance", cohomology(fan, linear_shift(D, m)) == T, f"{tag} D={D} m={m}")
        rep.check("box_robustness", cohomology(fan, D, padding=3) == T, f"{tag} D={D}")
        rep.check("euler_via_resolution", T.euler == euler_via_resolution(fan, D), f"{tag} D={D} {T}")
        if is_nef(D):
            rep.check("demazure_vanishing", T.h1 == 0 and T.h2 == 0, f"{tag} D={D} {T}")
            rep.check("big_iff_square", is_big(D) == (intersect(D, D) > 0), f"{tag} D={D}")

    # Euler characteristic and Serre duality on the smooth model
    Ks = canonical(smooth)
    for _ in range(3):
        D = _small_integral(rng, smooth)
        T = cohomology(smooth, D)
        rep.check("euler_riemann_roch", T.euler == euler_characteristic(smooth, D), f"{smooth} D={D} {T}")
        dual = cohomology(smooth, Ks - D)
        rep.check("serre_duality", (T.h0, T.h1, T.h2) == (dual.h2, dual.h1, dual.h0),
                  f"{smooth} D={D} {T} vs {dual}")
        rep.check("h0_lattice_count", T.h0 == h0_lattice_count(smooth, D), f"{smooth} D={D}")
        rep.check("nef_equivalence", is_nef(D) == is_nef_cartier(D), f"{smooth} D={D}")

    # bigness: D nef effective and K + roundup(D) nef  =>  kappa(D) = 2
    for _ in range(3):
        t = positive_rational(rng, 4, max_denominator)
        P = divisor(fan, [random_rational(rng, 0, 1, max_denominator) for _ in range(n)])
        D = t * H + P
        if is_nef(D) and is_effective(D):
            adj = K + round_up(D)
            if is_nef(adj):
                rep.check("big_from_nef_adjoint", iitaka_dimension(D) == 2, f"{tag} D={D}")

    # MMP: bounded length, one of the three outcomes, no flips; then the
    # cohomology of each contraction, checked against both the plain
    # D.E < 0 statement and the relative vanishing condition (D - K).E > E^2
    D = _small_integral(rng, fan, 3)
    try:
        trace = run_mmp(fan, D, check_cohomology=True, strict=False)
        outcome = trace.outcome
        ok = len(trace.steps) <= n - 3 and isinstance(outcome, (MinimalModel, MoriFiberSpace, RankOne))
        if isinstance(outcome, MoriFiberSpace):
            ok = ok and len(trace.final_fan) == 4
        if isinstance(outcome, RankOne):
            ok = ok and len(trace.final_fan) == 3 and outcome.minus_d_ample
        if isinstance(outcome, MinimalModel):
            ok = ok and is_nef(trace.final_divisor)
        rep.check("mmp_contract", ok, f"{tag} D={D}")
        rep.counts["mmp_steps"] += len(trace.steps)
        rep.counts["mmp_fallbacks"] += trace.fallback_used
        for s in trace.steps:
            where = f"{tag} D={D} step {s.ray}: {s.table_before} -> {s.table_after}"
            rep.check("mmp_h0_preserved", s.table_before.h0 == s.table_after.h0, where)
            rep.check("mmp_cohomology_preserved", s.preserved, where)
            if s.adjoint_positive:
                rep.check("mmp_cohomology_preserved_adjoint", s.preserved, where)
    except InvariantError as exc:
        rep.check("mmp_contract", False, f"{tag} D={D}: {exc}")
    return rep


def property_suite(seed: int, fans: int = 200, max_rays: int = 10, coord_bound: int = 5,
                   max_denominator: int = 6) -> PropertyReport:
    total = PropertyReport()
    for t in range(fans):
        rep = property_trial(t, seed, max_rays, coord_bound, max_denominator)
        total.counts.update(rep.counts)
        total.violations.extend(rep.violations)
    return total
