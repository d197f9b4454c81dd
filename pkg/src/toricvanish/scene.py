"""Line-oriented scene files: a fan plus named divisors and boundaries.

::

    # comment
    rays
    1 0
    0 1
    -1 -1
    divisor H 1 0 0
    boundary Delta 1/2 0 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .divisors import TDivisor
from .fan import Fan, FanError, validate
from .lattice import format_rational, parse_rational
from .singularities import PairBoundary


class SceneError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class SceneFile:
    rays: list[tuple[int, int]]
    divisors: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    boundaries: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def fan(self) -> Fan:
        return validate(self.rays)

    def divisor(self, name: str) -> TDivisor:
        if name not in self.divisors:
            raise SceneError(f"no divisor named {name!r}")
        return TDivisor(self.fan(), self.divisors[name])

    def boundary(self, name: str) -> PairBoundary:
        if name not in self.boundaries:
            raise SceneError(f"no boundary named {name!r}")
        return PairBoundary(self.fan(), self.boundaries[name])


def parse_scene(text: str) -> SceneFile:
    rays: list[tuple[int, int]] | None = None
    in_rays = False
    entries: list[tuple[int, str, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "rays":
            if len(words) != 1:
                raise SceneError("'rays' header takes no arguments", lineno)
            if rays is not None:
                raise SceneError("duplicate rays section", lineno)
            rays, in_rays = [], True
        elif head in ("divisor", "boundary"):
            in_rays = False
            if len(words) < 3:
                raise SceneError(f"{head} line needs a name and coefficients", lineno)
            entries.append((lineno, head, words[1], words[2:]))
        elif in_rays:
            if len(words) != 2:
                raise SceneError(f"ray line needs 2 integers, got {len(words)} fields", lineno)
            try:
                rays.append((int(words[0]), int(words[1])))
            except ValueError:
                raise SceneError(f"bad integer in ray line: {line!r}", lineno) from None
        else:
            raise SceneError(f"unexpected line: {line!r}", lineno)
    if rays is None:
        first = entries[0][0] if entries else None
        raise SceneError("missing rays section", first)
    scene = SceneFile(rays)
    n = len(rays)
    seen: set[str] = set()
    for lineno, kind, name, fields in entries:
        if name in seen:
            raise SceneError(f"duplicate name {name!r}", lineno)
        seen.add(name)
        if len(fields) != n:
            raise SceneError(f"{kind} {name} has {len(fields)} coefficients, expected {n}", lineno)
        try:
            coeffs = tuple(parse_rational(f) for f in fields)
        except ValueError as exc:
            raise SceneError(str(exc), lineno) from None
        (scene.divisors if kind == "divisor" else scene.boundaries)[name] = coeffs
    return scene


def load_scene(path) -> SceneFile:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def emit_scene(scene: SceneFile, header: str | None = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    lines.append("rays")
    lines += [f"{x} {y}" for x, y in scene.rays]
    for name, coeffs in scene.divisors.items():
        lines.append(f"divisor {name} " + " ".join(format_rational(c) for c in coeffs))
    for name, coeffs in scene.boundaries.items():
        lines.append(f"boundary {name} " + " ".join(format_rational(c) for c in coeffs))
    return "\n".join(lines) + "\n"


__all__ = ["SceneFile", "SceneError", "FanError", "parse_scene", "load_scene", "emit_scene"]
