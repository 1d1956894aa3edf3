import json
from pathlib import Path

import pytest

from jetvar import cli
from jetvar.expr import JetSpace, World, parse
from jetvar.variational import RelativeEulerResult, relative_euler

GOLDEN = Path(__file__).parent / "golden"
PROBLEMS = Path(__file__).parent.parent / "problems"

DIRICHLET = {"n": 2, "m": 1, "lagrangian": "u1_{1,0}^2/2 + u1_{0,1}^2/2"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------- el / rel-euler ----------


def test_el_text(capsys, write_problem):
    code, out, _ = run(capsys, "el", "--problem", write_problem(DIRICHLET))
    assert code == 0
    assert "-u1_{2,0} - u1_{0,2} = 0" in out


def test_el_without_extremals(capsys, write_problem):
    path = write_problem({"n": 2, "m": 1, "lagrangian": "u1"})
    code, out, _ = run(capsys, "el", "--problem", path, "--format", "json")
    assert code == 0
    assert json.loads(out)["el"] == ["1"]


def test_malformed_lagrangian(capsys, write_problem):
    path = write_problem({"n": 2, "m": 1, "lagrangian": "u1_{1,0} +* 2"})
    code, out, err = run(capsys, "el", "--problem", path)
    assert code == 2
    assert out == ""
    assert "Syntax error" in err


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 0, "m": 1, "lagrangian": "x1"},
        {"n": 2, "m": 1, "lagrangian": "u2_{1,0}"},
        {"n": 2, "m": 1, "lagrangian": "u1", "normal_axis": 1},
        {"n": 2, "m": 1, "lagrangian": "u1", "extra": True},
    ],
)
def test_invalid_problems(capsys, write_problem, payload):
    code, _, err = run(capsys, "rel-euler", "--problem", write_problem(payload))
    assert code == 2
    assert err.startswith("error:")


def test_missing_problem_file(capsys, tmp_path):
    code, _, err = run(capsys, "el", "--problem", str(tmp_path / "nope.json"))
    assert code == 2
    assert "error" in err


@pytest.mark.parametrize("name", ["dirichlet", "beam"])
def test_rel_euler_golden(capsys, name):
    code, out, _ = run(capsys, "rel-euler", "--problem", str(PROBLEMS / f"{name}.json"), "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / f"{name}_rel_euler.json").read_text())


def test_rel_euler_text(capsys):
    code, out, _ = run(capsys, "rel-euler", "--problem", str(PROBLEMS / "dirichlet.json"))
    assert code == 0
    assert "Natural boundary conditions on x_n = 0" in out
    assert "(k=1, i=0)  ub1_1_{0} = 0" in out


def test_rel_euler_jet_free(capsys, write_problem):
    path = write_problem({"n": 2, "m": 1, "lagrangian": "x1*x2"})
    code, out, _ = run(capsys, "rel-euler", "--problem", path)
    assert code == 0
    assert "(none)" in out


def test_strategy_flag_does_not_change_theta(capsys):
    path = str(PROBLEMS / "minimal_surface.json")
    _, default, _ = run(capsys, "rel-euler", "--problem", path, "--format", "json")
    _, alternate, _ = run(capsys, "rel-euler", "--problem", path, "--format", "json", "--strategy", "alternate")
    assert json.loads(default)["theta"] == json.loads(alternate)["theta"]


def test_report_expressions_reparse(capsys):
    code, out, _ = run(capsys, "rel-euler", "--problem", str(PROBLEMS / "minimal_surface.json"), "--format", "json")
    assert code == 0
    report = json.loads(out)
    space = JetSpace(2, 1)
    result = relative_euler(parse("sqrt(1 + u1_{1,0}^2 + u1_{0,1}^2)", space))
    assert [parse(e, space) for e in report["el"]] == list(result.el)
    for entry in report["theta"]:
        assert parse(entry["expr"], space, World.BOUNDARY) == result.theta[(entry["k"], entry["i"])]


# ---------- green ----------


def test_green_beam(capsys):
    code, out, _ = run(capsys, "green", "--problem", str(PROBLEMS / "beam.json"), "--format", "json")
    assert code == 0
    green = json.loads(out)["green"]
    assert green["h"] == ["u1_{4}"]
    assert green["currents"] == [
        [{"k": 1, "sigma": [0], "expr": "-u1_{3}"}, {"k": 1, "sigma": [1], "expr": "u1_{2}"}]
    ]


def test_green_text(capsys):
    code, out, _ = run(capsys, "green", "--problem", str(PROBLEMS / "dirichlet.json"))
    assert code == 0
    assert "h_1 = -u1_{2,0} - u1_{0,2}" in out
    assert "eta_2: (k=1, sigma=(0,0))  u1_{0,1}" in out


# ---------- check ----------


@pytest.mark.parametrize("lagrangian", ["u1_{1,0}^2/2 + u1_{0,1}^2/2", "0", "x1*u1*u1_{0,1}^2"])
def test_check_passes(capsys, write_problem, lagrangian):
    path = write_problem({"n": 2, "m": 1, "lagrangian": lagrangian})
    code, out, _ = run(capsys, "check", "--problem", path)
    assert code == 0
    assert "[FAIL]" not in out
    assert "[PASS] tangency" in out


def test_check_line_has_no_tangency(capsys):
    code, out, _ = run(capsys, "check", "--problem", str(PROBLEMS / "beam.json"), "--format", "json")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert "tangency" not in names
    assert names[0] == "first_variation"


def test_check_is_deterministic(capsys):
    path = str(PROBLEMS / "minimal_surface.json")
    _, first, _ = run(capsys, "check", "--problem", path, "--format", "json", "--seed", "3")
    _, second, _ = run(capsys, "check", "--problem", path, "--format", "json", "--seed", "3")
    assert first == second


def test_check_detects_corrupted_theta(capsys, monkeypatch):
    def corrupted(f, strategy):
        good = relative_euler(f, strategy)
        theta = {key: v * 2 for key, v in good.theta.items()}
        return RelativeEulerResult(good.el, theta)

    monkeypatch.setattr(cli, "relative_euler", corrupted)
    code, out, _ = run(capsys, "check", "--problem", str(PROBLEMS / "dirichlet.json"))
    assert code == 1
    assert "[FAIL] strategy_invariance" in out


@pytest.mark.parametrize(
    "flags", [("--probes", "0"), ("--probes", "-3"), ("--probes", "many"), ("--log-level", "bogus")]
)
def test_bad_flags_are_input_errors(capsys, flags):
    with pytest.raises(SystemExit) as exc:
        cli.main(["check", "--problem", str(PROBLEMS / "dirichlet.json"), *flags])
    assert exc.value.code == 2
    out, err = capsys.readouterr()
    assert out == ""
    assert flags[0] in err


def test_log_level_is_case_insensitive(capsys):
    code, _, _ = run(capsys, "el", "--problem", str(PROBLEMS / "dirichlet.json"), "--log-level", "debug")
    assert code == 0


# ---------- pullback / schema ----------


def test_pullback_command(capsys):
    code, out, _ = run(capsys, "pullback", "u1_{2,3}", "--n", "2", "--m", "1")
    assert code == 0
    assert out.strip() == "ub1_3_{2}"


def test_pullback_needs_a_space(capsys):
    code, _, err = run(capsys, "pullback", "u1")
    assert code == 2
    assert "--n" in err


def test_schema(capsys):
    code, out, _ = run(capsys, "schema")
    assert code == 0
    schema = json.loads(out)
    assert set(schema["properties"]) == {"el", "theta", "green", "checks"}
