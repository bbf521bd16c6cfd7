import json

import pytest

from qsl.cli import run
from qsl.quivercomb import DimVector, enumerate_rank_arrays

RANKS = '{"1,2":1,"2,3":0,"1,3":0}'


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_convert_example(capsys):
    code, out, _ = call(capsys, "convert", "--n", "1,1,1", "--ranks", RANKS)
    assert code == 0
    data = json.loads(out)
    assert data["tau_str"] == "({2},{1,2},{1,2,3})"
    assert data["m"]["1,3"] == 1 and data["m"]["3,4"] == 1
    assert data["block"] == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


def test_convert_round_trips(capsys):
    for r in enumerate_rank_arrays(DimVector.of(1, 1, 1)):
        _, out, _ = call(capsys, "convert", "--n", "1,1,1", "--ranks", json.dumps(r.to_json()["r"]))
        first = json.loads(out)
        for flag, key in (("--ranks", "r"), ("--mults", "m"), ("--tau", "tau"), ("--block", "block")):
            code, again, _ = call(capsys, "convert", "--n", "1,1,1", flag, json.dumps(first[key]))
            assert code == 0 and json.loads(again) == first


def test_verify_all_example(capsys):
    code, out, _ = call(capsys, "verify", "all", "--n", "1,1,1", "--q", "2")
    assert code == 0
    data = json.loads(out)
    assert data["passed"]
    rank_scenarios = {json.dumps(r["params"]["r"]) for r in data["reports"] if r["scenario"] == "zelevinsky"}
    assert len(rank_scenarios) == 4


def test_poset_dot(capsys):
    code, out, _ = call(capsys, "poset", "--n", "1,1,1", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 4


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["verify", "ideals", "--n", "1,2,1", "--q", "2"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first
    target = tmp_path / "out.json"
    assert run(argv + ["--out", str(target)]) == 0
    assert target.read_text(encoding="utf-8") == first
    assert "wall_time" not in first


def test_timings_flag(capsys):
    _, out, _ = call(capsys, "verify", "zelevinsky", "--n", "1,1", "--q", "2", "--timings")
    assert "wall_time" in json.loads(out)["reports"][0]


@pytest.mark.parametrize("argv", [
    ["convert", "--n", "1,1,1", "--ranks", '{"1,2":1}'],
    ["convert", "--n", "1,1,1", "--ranks", '{"1,2":1,"2,3":1,"1,3":0}'],
    ["convert", "--n", "1,1,1", "--ranks", "{not json"],
    ["convert", "--n", "1,1,1"],
    ["orbits", "--n", "3,3", "--q", "3", "--cap-points", "100"],
    ["tau", "--ranks", RANKS],
    ["dim", "--n", "1,1", "--format", "dot"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("qsl: error:") and err.count("\n") == 1


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "nonsense"])
    assert exc.value.code == 2


def test_tau_dim_generators(capsys):
    _, out, _ = call(capsys, "tau", "--n", "1,1,1", "--ranks", RANKS)
    data = json.loads(out)
    assert data["tau_max_str"] == "({3},{1,3},{1,2,3})" and data["tau_r_str"] == "({2},{1,2},{1,2,3})"
    code, out, _ = call(capsys, "dim", "--n", "1,1,1", "--format", "tsv")
    assert code == 0 and len(out.splitlines()) == 5
    _, out, _ = call(capsys, "generators", "--n", "1,1,1", "--family", "I2", "--ranks", RANKS)
    assert [g["sigma"] for g in json.loads(out)] == [[3], [1, 3], [2, 3]]
    _, out, _ = call(capsys, "generators", "--n", "1,1", "--family", "I_tau", "--perm", "1,2")
    assert json.loads(out) == [{"family": "I_tau", "level": 1, "sigma": [2]}]


def test_verify_stability_and_degeneracy(capsys):
    code, out, _ = call(capsys, "verify", "stability", "--perm", "2,1", "--q", "2", "--format", "tsv")
    assert code == 0 and out.splitlines()[1].split("\t")[2] == "PASS"
    code, out, _ = call(capsys, "verify", "degeneracy", "--m", "1", "--q", "2")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    flag = [r for r in data["reports"] if r["scenario"] == "flag_pair"]
    assert flag and all("literal_disagreements" in r["details"] for r in flag)


def test_perm_degree_mismatch(capsys):
    code, _, err = call(capsys, "verify", "stability", "--perm", "2,1,3", "--m", "1")
    assert code == 2 and "degree" in err
