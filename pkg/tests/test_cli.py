import json
import subprocess
import sys

import pytest

from braidlink.cli import main

TORUS = {"generators": ["a", "b"], "relations": ["a b a^-1 b^-1"]}


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if code == 0 and out.out else None), out.err


@pytest.fixture
def torus_file(tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(TORUS))
    return str(path)


def test_eval_all_methods_agree(capsys):
    code, data, _ = run(["eval", "--symbol", "(B-2A|C)", "--word", "b c a B C b b", "--alphabet", "a,b,c", "--method", "all"], capsys)
    assert code == 0
    assert set(data["values"].values()) == {"3/1"}
    assert data["agreement"] is True


def test_eval_split_on_a_squared(capsys):
    code, data, _ = run(["eval", "--symbol", "(A|A)", "--word", "a a", "--alphabet", "a", "--method", "all"], capsys)
    assert code == 0
    v = data["values"]
    assert v["singlepass"] == v["recursive"] == v["config"] == "1/1"
    assert v["bch"] == "0/1"
    assert data["agreement"] is False and data["eigenword"] is False


def test_depth_torus(capsys, torus_file):
    code, data, _ = run(["depth", "--presentation", torus_file, "--word", "a b a^-1 b^-1", "--max-weight", "4"], capsys)
    assert code == 0
    assert data["depth"] == "greater than 4"
    assert data["notes"]


def test_depth_free_has_witness_symbol(capsys):
    code, data, _ = run(["depth", "--alphabet", "a,b", "--word", "abAB", "--max-weight", "3"], capsys)
    assert code == 0
    assert data["depth"] == "exactly 2"
    assert data["symbol"] == "(A|B)"


def test_invariants(capsys, torus_file):
    code, data, _ = run(["invariants", "--presentation", torus_file, "--max-weight", "3", "--symbols"], capsys)
    assert code == 0
    assert data["cumulative_dimensions"] == [2, 2, 2]
    assert len(data["weights"]["1"]) == 2 and "symbol" in data["weights"]["1"][0]


def test_bch_and_basis(capsys):
    code, data, _ = run(["bch", "--alphabet", "a,b", "--word", "ab", "--max-weight", "2"], capsys)
    assert code == 0
    assert data["expansion"] == {"a": "1/1", "b": "1/1", "ab": "1/2", "ba": "-1/2"}
    assert data["lie"] == {"a": "1/1", "b": "1/1", "[a,b]": "1/2"}
    code, data, _ = run(["basis", "--alphabet", "a,b", "--max-weight", "5"], capsys)
    assert data["dimensions"] == [2, 1, 2, 3, 6]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert main(["basis", "--alphabet", "a,b,c", "--max-weight", "3", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["dimensions"] == [3, 3, 8]


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--symbol", "(A|", "--word", "ab", "--alphabet", "a,b"],
        ["eval", "--symbol", "(A|B)", "--word", "a x", "--alphabet", "a,b"],
        ["bch", "--word", "ab"],
        ["depth", "--presentation", "/nonexistent.json", "--word", "ab"],
    ],
)
def test_parse_errors_exit_2(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2 and "parse error" in err


@pytest.mark.parametrize(
    "args",
    [
        ["basis", "--alphabet", "a,b", "--max-weight", "0"],
        ["basis", "--alphabet", "a,b", "--max-weight", "9"],
    ],
)
def test_semantic_errors_exit_3(args, capsys):
    code, _, _ = run(args, capsys)
    assert code == 3


def test_weight_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDLINK_MAX_WEIGHT", "2")
    assert run(["basis", "--alphabet", "a,b", "--max-weight", "3"], capsys)[0] == 3
    monkeypatch.setenv("BRAIDLINK_MAX_WEIGHT", "lots")
    assert run(["basis", "--alphabet", "a,b", "--max-weight", "2"], capsys)[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "braidlink.cli", "basis", "--alphabet", "a,b", "--max-weight", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimensions"] == [2, 1]
