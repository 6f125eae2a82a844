"""End-to-end checks of the command-line interface.

Every test drives :func:`salimits.cli.main` in-process and inspects the
captured output, so the suite exercises exactly what a shell user sees:
exit codes, JSON payloads, CSV layout, and the config file plumbing.
"""

import json

import pytest

from salimits import benchmark
from salimits.cli import main
from salimits.schemas import validate


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- exit codes ---------------------------------------------------------------


def test_usage_errors_exit_one(capsys):
    for argv in (
        [],                             # missing subcommand
        ["frobnicate"],                 # unknown subcommand
        ["tower"],                      # no --mu and no config
        ["salpha", "--mu", "3.2"],      # missing required --x
        # bifurcation validates the family before spawning workers
        ["bifurcation", "--family", "weird", "--mu-min", "3", "--mu-max", "4"],
    ):
        with pytest.raises(SystemExit) as ei:
            main(argv)
        assert ei.value.code == 1
        capsys.readouterr()


def test_unknown_family_exits_two(capsys):
    # everywhere else the family is resolved by the library, not the parser
    code, out, err = run(capsys, "tower", "--mu", "3.2", "--family", "weird")
    assert code == 2
    assert out == ""
    assert "unknown family" in err


def test_analysis_failure_exits_two(capsys):
    code, out, err = run(capsys, "tower", "--mu", "3.5699")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_truncated_tower_exits_three(capsys):
    code, out, err = run(capsys, "tower", "--mu", "3.55", "--max-depth", "2")
    assert code == 3
    payload = json.loads(out)
    validate(payload)
    assert payload["truncated"] is True
    assert payload["p"] == 2


# -- JSON payloads ------------------------------------------------------------


def test_tower_json_validates(capsys):
    code, out, _ = run(capsys, "tower", "--mu", "3.2")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["mu"] == 3.2
    assert payload["p"] == 2
    kinds = [nd["kind"] for nd in payload["nodes"]]
    assert kinds == ["repelling_cycle", "repelling_cycle", "attracting"]
    top = payload["nodes"][-1]
    assert top["attracting_type"] == 1
    assert top["cycle"]["period"] == 2
    # margins must serialize as plain finite numbers
    for nd in payload["nodes"]:
        if nd["region"]:
            for v in nd["region"]["margins"].values():
                assert isinstance(v, float)


def test_salpha_payload(capsys):
    code, out, _ = run(capsys, "salpha", "--mu", "3.2", "--x", "0.3")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["closed"] is True
    assert payload["level"] >= 0
    assert payload["pieces"]
    for piece in payload["pieces"]:
        assert piece["lo"] <= piece["hi"]


def test_oracle_classes_payload(capsys):
    code, out, _ = run(capsys, "oracle", "classes", "--mu", "3.2", "--n", "8192")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["n"] == 8192
    assert len(payload["classes"]) == 3
    for cls in payload["classes"]:
        assert cls["cells"] >= 1
        for lo, hi in cls["runs"]:
            assert 0.0 <= lo <= hi <= 1.0


def test_symbolic_itinerary_payload(capsys):
    code, out, _ = run(
        capsys, "symbolic", "itinerary", "--mu", "3.84", "--x", "0.3",
        "--length", "12", "--word-len", "6",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["symbols"] == "01"
    assert payload["matrix"] == [[0, 1], [1, 1]]
    assert payload["forbidden"] == ["00"]
    assert len(payload["itinerary"]) == 12
    assert set(payload["itinerary"]) <= {"0", "1"}
    assert "00" not in payload["itinerary"]


# -- CSV commands -------------------------------------------------------------


def test_bifurcation_csv(capsys):
    code, out, _ = run(
        capsys, "bifurcation", "--mu-min", "2.8", "--mu-max", "3.2",
        "--samples", "3", "--transient", "64", "--points", "8",
        "--workers", "2",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "mu,x,class"
    assert len(lines) == 1 + 3 * 8
    for line in lines[1:]:
        mu, x, cls = line.split(",")
        assert 2.8 <= float(mu) <= 3.2
        assert 0.0 <= float(x) <= 1.0
        assert cls == "attractor"


def test_bifurcation_tower_rows(capsys):
    code, out, _ = run(
        capsys, "bifurcation", "--mu-min", "3.2", "--mu-max", "3.2",
        "--samples", "1", "--transient", "64", "--points", "4", "--tower",
    )
    assert code == 0
    classes = {line.split(",")[2] for line in out.strip().splitlines()[1:]}
    assert "cycle_node" in classes
    assert "attractor" in classes


def test_bifurcation_partition_mode(capsys):
    code, out, err = run(
        capsys, "bifurcation", "--partition", "--mu-min", "3.2",
        "--mu-max", "3.2", "--samples", "1",
    )
    assert code == 0
    assert out == ""
    assert "ok p=2" in err

    code, _, err = run(
        capsys, "bifurcation", "--partition", "--mu-min", "3.5699",
        "--mu-max", "3.5699", "--samples", "1",
    )
    assert code == 2
    assert "AnalysisError" in err


def test_oracle_backward_csv(capsys):
    code, out, _ = run(
        capsys, "oracle", "backward", "--mu", "3.2", "--x", "0.3",
        "--depth", "5", "--trails", "3", "--seed", "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "trail,step,x"
    assert 3 <= len(lines) - 1 <= 3 * 6
    for line in lines[1:]:
        trail, step, x = line.split(",")
        assert 0 <= int(trail) < 3
        assert 0 <= int(step) <= 5
        assert 0.0 <= float(x) <= 1.0


def test_oracle_backward_alpha_json(capsys):
    code, out, _ = run(
        capsys, "oracle", "backward", "--mu", "3.2", "--x", "0.3",
        "--depth", "80", "--trails", "40", "--alpha",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 0
    assert payload["estimate"]
    assert all(0.0 <= v <= 1.0 for v in payload["estimate"])


# -- plumbing -----------------------------------------------------------------


def test_stdout_is_deterministic(capsys):
    argv = ("tower", "--mu", "3.55")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second

    argv = ("oracle", "backward", "--mu", "3.84", "--x", "0.6", "--depth",
            "10", "--trails", "5", "--seed", "7")
    assert run(capsys, *argv) == run(capsys, *argv)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "tower.json"
    code, out, _ = run(capsys, "tower", "--mu", "3.2", "-o", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    validate(payload)
    assert payload["mu"] == 3.2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "settings.json"
    cfg.write_text(json.dumps({"family_id": "logistic", "mu": 3.2,
                               "scan_n": 2048}))
    code, out, _ = run(capsys, "tower", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["mu"] == 3.2

    # CLI flags win over the config file
    code, out, _ = run(capsys, "salpha", "--config", str(cfg), "--mu", "2.5",
                       "--x", "0.9")
    assert code == 0
    assert json.loads(out)["mu"] == 2.5


def test_bad_config_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"family_id": "logistic", "mu": 3.2,
                               "grid": 17}))
    for path in (str(bad), str(tmp_path / "missing.json")):
        with pytest.raises(SystemExit) as ei:
            main(["tower", "--config", path])
        assert ei.value.code == 1
        assert "cannot load config" in capsys.readouterr().err


def test_benchmark_smoke(capsys):
    assert benchmark.main(["--reps", "1", "--scale", "1"]) == 0
    out = capsys.readouterr().out
    assert "speedup" in out or "pure" in out
