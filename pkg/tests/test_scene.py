from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricvanish.fan import projective_plane
from toricvanish.harness import random_fan, trial_rng
from toricvanish.scene import SceneError, SceneFile, emit_scene, parse_scene

P2_TEXT = "rays\n1 0\n0 1\n-1 -1\ndivisor H 1 0 0"


def test_parse_basic():
    scene = parse_scene(P2_TEXT)
    assert scene.fan() == projective_plane()
    assert scene.divisor("H").coeffs == (1, 0, 0)


def test_comments_and_blank_lines():
    text = "# header\n\nrays  # the fan\n1 0\n0 1\n\n-1 -1\nboundary B 1/2 0 1/3  # klt\n"
    scene = parse_scene(text)
    assert scene.boundary("B").delta == (Fraction(1, 2), 0, Fraction(1, 3))


@pytest.mark.parametrize("text,fragment,line", [
    ("divisor X 1 2", "missing rays", 1),
    ("rays\n1 0\n0 1\n-1 -1\ndivisor H 3/0 0 0", "zero denominator", 5),
    ("rays\n1 0\n0 1\n-1 -1\ndivisor H 1 0", "expected 3", 5),
    ("rays\n1 0\n0 1 2\n-1 -1", "2 integers", 3),
    ("rays\n1 0\n0 1\n-1 -1\ndivisor H 1 0 0\ndivisor H 0 1 0", "duplicate name", 6),
    ("rays\n1 0\n0 1\n-1 -1\ndivisor H 1 x 0", "bad rational", 5),
    ("rays\n1 0\nrays\n0 1", "duplicate rays", 3),
    ("rays\n1 0\n0 1\n-1 -1\nfoo", "2 integers", 5),
    ("rays\n1 0\n0 1\n-1 -1\ndivisor H 1 0 0\nfoo", "unexpected", 6),
])
def test_errors(text, fragment, line):
    with pytest.raises(SceneError) as info:
        parse_scene(text)
    assert fragment in str(info.value)
    assert info.value.line == line


def test_unknown_name():
    with pytest.raises(SceneError):
        parse_scene(P2_TEXT).divisor("nope")


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.integers(0, 10**6), st.data())
def test_round_trip(t, data):
    fan = random_fan(trial_rng(31, t), 10, 5)
    n = len(fan)
    names = data.draw(st.lists(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True),
                               unique=True, max_size=4))
    scene = SceneFile([tuple(r) for r in fan.rays])
    for k, name in enumerate(names):
        target = scene.divisors if k % 2 == 0 else scene.boundaries
        target[name] = tuple(data.draw(st.lists(coeffs, min_size=n, max_size=n)))
    again = parse_scene(emit_scene(scene, header="seed=1\nsecond line"))
    assert again == scene
