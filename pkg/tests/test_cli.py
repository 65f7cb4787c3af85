import json

import pytest

from altcsit import cli

import oracles


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_structured(capsys):
    code, out, _ = run_cli(["simulate", "--scheme", "scheme2", "--pattern", "ND,DN,PP",
                            "--trials", "10000", "--seed", "1"], capsys)
    doc = json.loads(out)
    assert code == cli.EXIT_OK
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    assert doc["seed"] == 1 and doc["config"]["trials"] == 10000
    assert doc["result"]["report"]["successes"] == 10000


def test_pattern_mismatch_exit(capsys):
    code, _, err = run_cli(["simulate", "--scheme", "scheme1", "--pattern", "NN,NN,NN"], capsys)
    assert code == cli.EXIT_PATTERN and "pattern mismatch" in err


def test_sweep_record(capsys):
    code, out, _ = run_cli(["simulate", "--scheme", "kuser", "--k", "3", "--sweep", "1e2:1e6:5",
                            "--trials", "200"], capsys)
    assert code == cli.EXIT_OK
    assert abs(json.loads(out)["result"]["slope"]["slope"] - 1.5) < 0.08


@pytest.mark.parametrize("sweep", ["1e2:1e2:5", "1e2:1e6", "a:b:c", "1e2:1e4:5"])
def test_bad_sweep_exit(sweep, capsys):
    code, _, _ = run_cli(["simulate", "--scheme", "scheme2", "--sweep", sweep, "--trials", "5"], capsys)
    assert code == cli.EXIT_SWEEP


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv(cli.SEED_ENV, "42")
    _, out, _ = run_cli(["simulate", "--scheme", "scheme1", "--trials", "3"], capsys)
    assert json.loads(out)["seed"] == 42


@pytest.mark.parametrize("fmt", ["structured", "rows"])
def test_replay_is_byte_identical(fmt, tmp_path, capsys):
    path = tmp_path / "run.out"
    code, _, _ = run_cli(["simulate", "--scheme", "threeuser", "--trials", "300", "--seed", "9",
                          "--noise-variance", "0.001", "--format", fmt, "--output", str(path)], capsys)
    assert code == 0
    _, out, _ = run_cli(["--replay", str(path)], capsys)
    assert out == path.read_text()


def test_rows_embed_config(capsys):
    _, out, _ = run_cli(["simulate", "--scheme", "scheme1", "--trials", "5", "--seed", "3",
                         "--format", "rows"], capsys)
    first = out.splitlines()[0]
    assert first.startswith("# config ") and json.loads(first[9:])["seed"] == 3


def test_patterns(capsys):
    _, out, _ = run_cli(["patterns"], capsys)
    res = json.loads(out)["result"]
    assert res["total"] == 729
    assert res["synergistic_count"] == sum(oracles.synergistic(p) for p in oracles.all_patterns(3))
    assert sum(res["histogram"].values()) == res["dispatchable_count"]
    _, out, _ = run_cli(["patterns", "--n-slots", "1"], capsys)
    assert json.loads(out)["result"]["synergistic_count"] == 0


def test_region(capsys):
    _, out, _ = run_cli(["region"], capsys)
    res = json.loads(out)["result"]
    assert res["max_sum"] == "4/3" and res["argmax"] == [["1/3"] * 4]
    from fractions import Fraction
    verts = [tuple(Fraction(x) for x in v) for v in res["vertices"]]
    A, b = oracles.outer_bound_arrays()
    assert oracles.rounded_set(verts) == oracles.rounded_set(oracles.brute_force_vertices(A, b))
    for i in range(4):
        assert [str(int(i == j)) for j in range(4)] in res["vertices"]


def test_region_rows(capsys):
    _, out, _ = run_cli(["region", "--format", "rows"], capsys)
    assert "max_sum 4/3 at 1/3,1/3,1/3,1/3" in out


def test_no_command_is_usage_error(capsys):
    assert cli.main([]) == cli.EXIT_USAGE


def test_unknown_scheme_rejected():
    with pytest.raises(SystemExit) as err:
        cli.main(["simulate", "--scheme", "bogus"])
    assert err.value.code == 2


def test_missing_k_is_an_error(capsys):
    code, _, err = run_cli(["simulate", "--scheme", "kuser", "--trials", "2"], capsys)
    assert code == cli.EXIT_ERROR and "k" in err
