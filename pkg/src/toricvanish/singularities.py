"""klt checks for torus-invariant pairs (X, Delta)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fan import Fan, locate_cone, minimal_resolution
from .lattice import det2


@dataclass(frozen=True)
class PairBoundary:
    fan: Fan
    delta: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.delta) != len(self.fan):
            raise ValueError(f"{len(self.delta)} boundary coefficients for {len(self.fan)} rays")
        object.__setattr__(self, "delta", tuple(Fraction(c) for c in self.delta))


def is_klt_combinatorial(pair: PairBoundary) -> bool:
    return all(0 <= d < 1 for d in pair.delta)


def log_discrepancy(pair: PairBoundary, v) -> Fraction:
    """Value at ``v`` of the function that is linear on each cone and equals 1 - delta_i on u_i."""
    fan = pair.fan
    i = locate_cone(fan, v)
    u, w = fan.ray(i), fan.ray(i + 1)
    d = det2(u, w)
    alpha = Fraction(det2(v, w), d)
    beta = Fraction(det2(u, v), d)
    n = len(fan)
    return alpha * (1 - pair.delta[i]) + beta * (1 - pair.delta[(i + 1) % n])


def exceptional_log_discrepancies(pair: PairBoundary):
    _, inserted = minimal_resolution(pair.fan)
    return [(w, log_discrepancy(pair, w)) for w, _ in inserted]


def is_klt_via_resolution(pair: PairBoundary) -> bool:
    """klt iff every divisor on the minimal resolution has positive log discrepancy."""
    if any(d >= 1 for d in pair.delta):
        return False
    return all(a > 0 for _, a in exceptional_log_discrepancies(pair))
