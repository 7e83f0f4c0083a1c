import csv
import io
import json
import math
import os
import pathlib
import subprocess

import jsonschema
import pytest

CLI = os.environ.get("MONOGAMY_CLI", "build/tools/monogamy")
ROOT = pathlib.Path(os.environ.get("MONOGAMY_ROOT", pathlib.Path(__file__).resolve().parents[2]))
BETA0 = 0.5 + 1.0 / (2.0 * math.sqrt(2.0))


def run(*args, threads=None):
    env = dict(os.environ)
    if threads is not None:
        env["MONOGAMY_THREADS"] = str(threads)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env, cwd=ROOT, timeout=600)


def schema(name):
    return json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())


def run_json(name, *args):
    r = run("--deterministic", "--format", "json", *args)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    jsonschema.validate(doc, schema(name))
    return doc


def rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


QKD = ["--n", "400", "--t", "100", "--s", "300", "--ell", "16", "--gamma", "0.2", "--epsilon", "0.05"]

OUTPUTS = [
    ("bounds", ["bounds", "--n", "1..4"]),
    ("bounds", ["bounds", "--game", "fixtures/qutrit_fourier_game.json", "--n", "2", "--gamma", "0.01"]),
    ("seesaw", ["--seed", "7", "seesaw", "--restarts", "3"]),
    ("qkd-delta", ["qkd-delta", "--n", "100000", "--t", "10000", "--gamma", "0.005", "--epsilon", "0.005",
                   "--s", "auto", "--ell", "1000"]),
    ("qkd-keylen", ["qkd-keylen", "--n", "1e8,1e9", "--gamma", "0.005", "--epsilon", "0.0035"]),
    ("qkd-sim", ["--seed", "3", "qkd-sim", *QKD, "--noise", "0.05", "--trials", "200"]),
    ("posver", ["posver", "--n", "1..3", "--log2-d", "1"]),
    ("posver", ["--seed", "5", "posver", "--mode", "simulate", "--n", "1,2", "--trials", "1000"]),
    ("ur-check", ["ur-check", "--fixture", "fixtures/ur_breidbart.json"]),
    ("ur-check", ["--seed", "2", "ur-check", "--random", "4"]),
    ("fixtures-validate", ["fixtures", "validate", "fixtures/bb84_game.json", "fixtures/scenario_default.json"]),
]


@pytest.mark.parametrize("name,args", OUTPUTS)
def test_json_output_matches_schema(name, args):
    run_json(name, *args)


def test_fixtures_match_schema():
    s = schema("fixture")
    paths = sorted((ROOT / "fixtures").glob("*.json"))
    assert paths
    for p in paths:
        jsonschema.validate(json.loads(p.read_text()), s)


def test_bounds_csv_rows():
    r = run("bounds", "--game", "bb84", "--n", "1..10")
    assert r.returncode == 0
    table = rows(r.stdout)
    assert [row["n"] for row in table] == [str(n) for n in range(1, 11)]
    for row in table:
        assert float(row["value"]) == pytest.approx(BETA0 ** int(row["n"]), rel=1e-14)


def test_seesaw_value():
    doc = run_json("seesaw", "--seed", "7", "seesaw", "--game", "bb84", "--n", "1", "--restarts", "20")
    assert abs(doc["result"]["value"] - BETA0) <= 1e-6
    assert doc["seed"] == 7


def test_qkd_delta_overflow_is_null():
    doc = run_json("qkd-delta", "qkd-delta", "--n", "100000", "--t", "10000", "--gamma", "0.005",
                   "--epsilon", "0.005", "--s", "auto", "--ell", "1000")
    assert doc["params"]["s"] == 7272
    assert doc["result"]["pa_term"] is None
    assert doc["result"]["vacuous"] is True


def test_timestamp_only_without_deterministic():
    r = run("--format", "json", "bounds", "--n", "2")
    assert "timestamp" in json.loads(r.stdout)
    assert "timestamp" not in run_json("bounds", "bounds", "--n", "2")


def test_stochastic_csv_records_seed():
    r = run("--seed", "11", "--format", "csv", "posver", "--mode", "simulate", "--trials", "100")
    assert r.stdout.splitlines()[0] == "# seed=11"


@pytest.mark.parametrize("args", [
    ["--seed", "9", "qkd-sim", *QKD, "--noise", "0.05", "--trials", "500"],
    ["--seed", "9", "posver", "--mode", "simulate", "--n", "1..4", "--trials", "5000"],
    ["--seed", "9", "seesaw", "--bob-dim", "2", "--restarts", "4"],
    ["--seed", "9", "ur-check", "--random", "5"],
])
@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_byte_identical_across_runs_and_threads(args, fmt):
    outs = [run("--deterministic", "--format", fmt, *args, threads=t) for t in (1, 1, 3)]
    assert all(o.returncode == 0 for o in outs)
    assert outs[0].stdout == outs[1].stdout == outs[2].stdout


def test_output_file(tmp_path):
    target = tmp_path / "out.csv"
    r = run("--format", "csv", "--output", str(target), "bounds", "--n", "3")
    assert r.returncode == 0 and r.stdout == ""
    assert rows(target.read_text())[0]["n"] == "3"


@pytest.mark.parametrize("args", [
    [],
    ["nonsense"],
    ["bounds", "--n", "5..2"],
    ["bounds", "--n", "abc"],
    ["--format", "xml", "bounds"],
    ["qkd-delta", "--n", "10"],
    ["posver", "--mode", "guess"],
    ["ur-check"],
    ["fixtures", "validate", "does/not/exist.json"],
])
def test_usage_errors_exit_2(args):
    r = run(*args)
    assert r.returncode == 2, (r.stdout, r.stderr)


@pytest.mark.parametrize("args,needle", [
    (["qkd-delta", "--n", "10", "--t", "20", "--gamma", "0", "--epsilon", "0.1", "--ell", "1"], "t < n"),
    (["qkd-delta", "--n", "100", "--t", "20", "--gamma", "0.3", "--epsilon", "0.3", "--ell", "1"], "gamma"),
    (["posver", "--mode", "simulate", "--v0", "0", "--v1", "2", "--pos", "3"], "pos"),
    (["seesaw", "--bob-dim", "64", "--charlie-dim", "64"], "seesaw"),
    (["fixtures", "validate", "CMakeLists.txt"], "parse error"),
])
def test_computation_errors_exit_1(args, needle):
    r = run(*args)
    assert r.returncode == 1
    assert needle in r.stderr


def test_help_exits_0():
    assert run("--help").returncode == 0
    assert run("qkd-sim", "--help").returncode == 0
