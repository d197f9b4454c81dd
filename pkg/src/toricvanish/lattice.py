"""Exact rank-2 lattice primitives.

Everything here works over Python integers and :class:`fractions.Fraction`;
no floating point is used anywhere in the package's kernel.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import NamedTuple

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class LatticeVector(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def vec(x: int, y: int) -> LatticeVector:
    return LatticeVector(int(x), int(y))


def dot(m, u) -> Fraction | int:
    """Pairing <m, u> for m in the character lattice (possibly rational)."""
    return m[0] * u[0] + m[1] * u[1]


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def primitivize(v) -> tuple[LatticeVector, int]:
    """Split ``v`` into its primitive direction and positive multiplier."""
    if v[0] == 0 and v[1] == 0:
        raise ValueError("not a direction: zero vector")
    g = gcd(v[0], v[1])
    return LatticeVector(v[0] // g, v[1] // g), g


def is_primitive(v) -> bool:
    return (v[0], v[1]) != (0, 0) and gcd(v[0], v[1]) == 1


def _half(v) -> int:
    # 0 for angles in [0, 180), 1 for [180, 360)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def ccw_compare(u, v) -> int:
    """Compare ``u`` and ``v`` by angle from the positive x-axis.

    Returns -1, 0 or 1. Vectors pointing the same way compare equal.
    """
    if (u[0], u[1]) == (0, 0) or (v[0], v[1]) == (0, 0):
        raise ValueError("ccw_compare needs nonzero vectors")
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    d = det2(u, v)
    if d > 0:
        return -1
    if d < 0:
        return 1
    return 0


def rot90(v) -> LatticeVector:
    return LatticeVector(-v[1], v[0])


def hj_continued_fraction(d: int, k: int) -> list[int]:
    """Hirzebruch-Jung expansion d/k = b1 - 1/(b2 - 1/(... - 1/br)), all bi >= 2."""
    if not 0 < k < d:
        raise ValueError(f"need 0 < k < d, got d={d}, k={k}")
    if gcd(d, k) != 1:
        raise ValueError(f"gcd({d}, {k}) != 1")
    out = []
    while k:
        b = -(-d // k)
        out.append(b)
        d, k = k, b * k - d
    return out


def evaluate_hj(bs: list[int]) -> Fraction:
    """Inverse of :func:`hj_continued_fraction`."""
    value = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        value = b - 1 / value
    return value


def solve2(a11, a12, a21, a22, b1, b2) -> tuple[Fraction, Fraction]:
    """Exact solve of a 2x2 linear system by Cramer's rule."""
    den = a11 * a22 - a12 * a21
    if den == 0:
        raise ZeroDivisionError("singular 2x2 system")
    return (Fraction(b1 * a22 - a12 * b2, den), Fraction(a11 * b2 - b1 * a21, den))


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; the sign lives on the numerator only."""
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"bad rational syntax: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
