import json
import subprocess
import sys

import pytest

from geocrystal.linalg import RatMat
from geocrystal.quiver import QuiverRep


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "geocrystal", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="module")
def p0_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "p0.json"
    point = QuiverRep(
        3,
        (1, 1),
        (1, 1),
        B={(2, 1): RatMat([[1]]), (1, 2): RatMat([[0]])},
        i={1: RatMat([[1]]), 2: RatMat([[1]])},
    )
    path.write_text(json.dumps(point.to_json()))
    return path


def test_theta_worked_example(p0_file, tmp_path):
    out = tmp_path / "flag.json"
    result = run_cli("theta", "--input", str(p0_file), "--out", str(out))
    assert result.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["composition"] == [1, 1, 1]
    assert payload["flag"]["spaces"][1]["entries"] == [["1/1"], ["-1/1"], ["0/1"]]
    assert payload["pass"] is True
    assert set(payload["invariants"]) == {
        "comm1",
        "comm2",
        "flag-subspace",
        "surjectivity",
        "epsilon-agreement",
        "reduction-intertwining",
        "hecke-compatibility",
    }
    assert all(payload["invariants"].values())


def test_theta_predicate_failure(p0_file, tmp_path):
    payload = json.loads(p0_file.read_text())
    payload["maps"]["j:1"] = {"rows": 1, "cols": 1, "entries": [["1/1"]]}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    result = run_cli("theta", "--input", str(bad))
    assert result.returncode == 1
    assert "in_Lambda: j nonzero" in result.stderr


def test_theta_malformed_input(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    result = run_cli("theta", "--input", str(bad))
    assert result.returncode == 2


def test_crystal_dot(tmp_path):
    out = tmp_path / "b11.dot"
    result = run_cli("crystal", "--n", "3", "--w", "1,1", "--format", "dot", "--out", str(out))
    assert result.returncode == 0
    text = out.read_text()
    node_lines = [l for l in text.splitlines() if "label=" in l and "->" not in l]
    assert len(node_lines) == 8


def test_crystal_json_counts():
    result = run_cli("crystal", "--n", "2", "--w", "2", "--format", "json")
    assert result.returncode == 0
    assert json.loads(result.stdout)["vertex_count"] == 3

    result0 = run_cli("crystal", "--n", "3", "--w", "0,0")
    assert json.loads(result0.stdout)["vertex_count"] == 1


def test_verify_quotients_facts(tmp_path):
    out = tmp_path / "q.json"
    result = run_cli(
        "verify", "--suite", "quotients", "--n", "3", "--d", "3", "--out", str(out)
    )
    assert result.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["facts"]["dim_U_mod_I3"] == 165
    assert payload["facts"]["dim_U_mod_J_(1,1)"] == 65


def test_verify_requires_seed_for_sampling():
    result = run_cli("verify", "--suite", "maffei", "--n", "3", "--w", "1,1", "--samples", "2")
    assert result.returncode == 2


def test_usage_error_exit_code():
    assert run_cli("verify").returncode == 2
    assert run_cli("frobnicate").returncode == 2


def test_determinism_byte_identical(p0_file, tmp_path):
    pairs = [
        ("theta", "--input", str(p0_file)),
        ("crystal", "--n", "3", "--w", "1,1", "--format", "dot"),
        ("crystal", "--n", "3", "--w", "2,1", "--format", "json"),
        ("verify", "--suite", "signs", "--n-max", "3", "--seed", "5"),
        (
            "verify", "--suite", "maffei", "--n", "3", "--w", "1,1",
            "--samples", "5", "--seed", "11",
        ),
        ("quotients", "--n", "2", "--d", "3"),
    ]
    for args in pairs:
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == second.returncode
        assert first.stdout.encode() == second.stdout.encode()


def test_verify_text_format():
    result = run_cli(
        "verify", "--suite", "quotients", "--n", "2", "--d", "2", "--format", "text"
    )
    assert result.returncode == 0
    assert result.stdout.startswith("schema_version 1")
    assert "dim_quotient_Id = 10" in result.stdout


def test_bundle_dump(tmp_path):
    out = tmp_path / "bundle.json"
    result = run_cli(
        "verify", "--suite", "maffei", "--n", "3", "--w", "1,1",
        "--samples", "4", "--seed", "3", "--dump-bundles", str(out),
    )
    assert result.returncode == 0
    from geocrystal.flag import flag_bundle_from_json

    x, flags = flag_bundle_from_json(json.loads(out.read_text()))
    assert x.d == 3 and len(flags) >= 1
