import pytest

from toricvanish.cli import main

SCENES = {
    "p1p1": "rays\n1 0\n0 1\n-1 0\n0 -1\ndivisor A 1 1 0 0\ndivisor K -1 -1 -1 -1\ndivisor F 1 0 0 0\n",
    "f1": "rays\n1 0\n0 1\n-1 1\n0 -1\ndivisor K -1 -1 -1 -1\ndivisor E2 0 2 0 0\n",
    "cone": "rays\n1 0\n1 2\n-1 -1\ndivisor H 1/2 0 0\nboundary B 1/2 0 0\nboundary Bad 1 0 0\n",
}


@pytest.fixture
def scenes(tmp_path):
    out = {}
    for name, text in SCENES.items():
        p = tmp_path / f"{name}.scene"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohom(scenes, capsys):
    code, out, _ = run(capsys, "cohom", "--fan", scenes["p1p1"], "--divisor", "A")
    assert code == 0 and out.strip() == "h0=4 h1=0 h2=0 chi=4"


def test_cohom_non_integral_is_usage_error(scenes, capsys):
    code, _, err = run(capsys, "cohom", "--fan", scenes["cone"], "--divisor", "H")
    assert code == 2 and "integral" in err


def test_kappa_and_positivity(scenes, capsys):
    assert run(capsys, "kappa", "--fan", scenes["p1p1"], "--divisor", "F")[1] == "kappa=1\n"
    assert run(capsys, "kappa", "--fan", scenes["p1p1"], "--divisor", "K")[1] == "kappa=-inf\n"
    assert run(capsys, "nef", "--fan", scenes["p1p1"], "--divisor", "F")[1] == "nef=true\n"
    assert run(capsys, "ample", "--fan", scenes["p1p1"], "--divisor", "F")[1] == "ample=false\n"
    assert run(capsys, "big", "--fan", scenes["cone"], "--divisor", "H")[1] == "big=true\n"


def test_klt(scenes, capsys):
    code, out, _ = run(capsys, "klt", "--fan", scenes["cone"], "--boundary", "B")
    assert code == 0
    assert out.splitlines() == [
        "klt_combinatorial=true",
        "klt_resolution=true",
        "exceptional (1,1): log_discrepancy=3/4",
    ]
    out = run(capsys, "klt", "--fan", scenes["cone"], "--boundary", "Bad")[1]
    assert "klt_combinatorial=false" in out and "klt_resolution=false" in out


def test_resolve(scenes, capsys):
    code, out, _ = run(capsys, "resolve", "--fan", scenes["cone"])
    assert code == 0
    assert out.splitlines() == ["resolved: [(1,0),(1,1),(1,2),(-1,-1)]", "inserted (1,1) in cone ((1,0),(1,2))"]


def test_mmp(scenes, capsys):
    code, out, _ = run(capsys, "mmp", "--fan", scenes["f1"], "--divisor", "K", "--check-cohomology")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("step 1: contract ray (0,1), D·E=-1, E^2=-1, before: h0=0 h1=0 h2=1")
    assert lines[-1] == "outcome: rank-one minus_d_ample=true"
    code, out, _ = run(capsys, "mmp", "--fan", scenes["p1p1"], "--divisor", "K")
    assert code == 0 and out.startswith("outcome: mori-fiber-space fiber_pair=±(0,-1)")


def test_mmp_changed_step_exits_1(scenes, capsys):
    code, out, _ = run(capsys, "mmp", "--fan", scenes["f1"], "--divisor", "E2", "--check-cohomology")
    assert code == 1 and "CHANGED" in out


def test_example(capsys):
    code, out, _ = run(capsys, "example-1-3")
    assert code == 0 and out.splitlines()[-1] == "kappa=1 h0=4"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify-a", "--trials", "10", "--seed", "1", "--no-timing")
    assert code == 0 and out.splitlines()[-1] == "failures=0"
    code, out, _ = run(capsys, "verify-b", "--trials", "10", "--seed", "1", "--no-timing")
    assert code == 0 and out.splitlines()[-1] == "failures=0"
    assert "wall_time" not in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "cohom", "--fan", "/nonexistent.scene", "--divisor", "A")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("argv", [["bogus"], ["cohom", "--fan"], []])
def test_argparse_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_bad_scene(tmp_path, capsys):
    p = tmp_path / "bad.scene"
    p.write_text("rays\n1 0\n0 1\n2 1\ndivisor D 1 0 0\n")
    code, _, err = run(capsys, "cohom", "--fan", str(p), "--divisor", "D")
    assert code == 2 and "det" in err

