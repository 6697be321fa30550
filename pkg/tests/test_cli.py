import json
import subprocess
import sys
from pathlib import Path

import pytest

from qweyl.cli import main
from qweyl.repbuild import Representation
from qweyl.repverify import verify
from qweyl.weylalg import AlgebraElement, AlgebraSpec, generator

DATA = Path(__file__).parent / "data"


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_pideg_examples(tmp_path, capsys):
    cfg = write(tmp_path, "a.json", {"l1": 2, "l2": 3, "e1": 3, "e2": 2, "elam": 0})
    code, out, _ = run(["pideg", "--config", cfg], capsys)
    assert code == 0 and json.loads(out)["pi_degree"] == 6
    cfg = write(tmp_path, "b.json", {"spec": {"l1": 2, "l2": 2, "elam": 1}})
    code, out, _ = run(["pideg", "--config", cfg], capsys)
    assert code == 0 and json.loads(out)["pi_degree"] == 4
    code, out, _ = run(["pideg", "--config", cfg, "--text"], capsys)
    assert out.startswith("PI degree 4")


def test_assumption_violation_exit_2(tmp_path, capsys):
    cfg = write(tmp_path, "a.json", {"l1": 2, "l2": 3, "elam": 1})
    code, out, err = run(["pideg", "--config", cfg], capsys)
    assert code == 2 and out == ""
    assert "assumption (*)" in err


def test_config_errors(tmp_path, capsys):
    assert run(["pideg", "--config", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["pideg", "--config", str(bad)], capsys)[0] == 2
    cfg = write(tmp_path, "c.json", {"spec": {"l1": 2, "l2": 2}, "family": "M9", "scalars": {}})
    assert run(["build", "--config", cfg], capsys)[0] == 2
    cfg = write(tmp_path, "d.json", {"spec": {"l1": 2, "l2": 2}})
    assert run(["nf", "--config", cfg], capsys)[0] == 2
    assert run(["nf", "--config", cfg, "--expr", "x1 * x3"], capsys)[0] == 2


def test_build_zero_parameter(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "m1.json",
        {"spec": {"l1": 2, "l2": 2}, "family": "M1", "scalars": {"alpha1": 0, "alpha2": 1, "gamma1": 3, "gamma2": 5}},
    )
    code, _, err = run(["build", "--config", cfg], capsys)
    assert code == 2 and "parameter must be nonzero" in err


def test_nf_example(tmp_path, capsys):
    cfg = write(tmp_path, "s.json", {"spec": {"l1": 2, "l2": 3}})
    code, out, _ = run(["nf", "--config", cfg, "--expr", "x1*y1"], capsys)
    assert code == 0
    spec = AlgebraSpec("A2", 2, 3)
    elem = AlgebraElement.from_json(spec, json.loads(out)["element"])
    assert elem == spec.q1 * (generator(spec, "y1") * generator(spec, "x1")) + 1


def test_build_then_verify_round_trip(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "m2.json",
        {
            "spec": {"l1": 2, "l2": 3},
            "family": "M2",
            "scalars": {"eta1": "1/2", "xi2": {"zeta_pow": 1, "mult": 3}, "zeta2": 5},
        },
    )
    rep_path = tmp_path / "rep.json"
    assert run(["build", "--config", cfg, "--out", str(rep_path)], capsys)[0] == 0
    rep = Representation.from_json(json.loads(rep_path.read_text()))
    code, out, _ = run(["verify", "--config", str(rep_path)], capsys)
    assert code == 0
    assert json.loads(out)["report"] == verify(rep).to_json()
    # the same report when verify builds from the config itself
    code, out2, _ = run(["verify", "--config", cfg], capsys)
    assert code == 0 and json.loads(out2)["report"] == json.loads(out)["report"]


def test_verify_names_failing_relation(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "m5.json",
        {"spec": {"l1": 2, "l2": 2}, "family": "M5", "scalars": {"alpha": 2, "xi": 3, "gamma": 5}},
    )
    rep_path = tmp_path / "rep.json"
    run(["build", "--config", cfg, "--out", str(rep_path)], capsys)
    obj = json.loads(rep_path.read_text())
    obj["x2"][0][0] = "7"
    rep_path.write_text(json.dumps(obj))
    code, out, err = run(["verify", "--config", str(rep_path)], capsys)
    assert code == 1
    failed = json.loads(out)["failed"]
    assert failed and all(f.startswith("relation ") for f in failed)
    assert "check failed" in err


def test_oracle_and_iso(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "m5.json",
        {"spec": {"l1": 2, "l2": 3}, "family": "M5", "scalars": {"alpha": 2, "xi": 3, "gamma": 5}},
    )
    code, out, _ = run(["oracle", "--config", cfg], capsys)
    assert code == 0 and json.loads(out)["isomorphic"]
    pair = {
        "spec": {"l1": 2, "l2": 3},
        "family": "M5",
        "a": {"alpha": 2, "xi": 3, "gamma": 5},
        "b": {"alpha": 2, "xi": 3, "gamma": 5},
    }
    code, out, _ = run(["iso", "--config", write(tmp_path, "p.json", pair)], capsys)
    res = json.loads(out)["results"][0]
    assert code == 0 and res["stated_criterion"] and res["intertwiner_found"]
    sampled = write(tmp_path, "s.json", {"spec": {"l1": 2, "l2": 3}, "family": "M3", "count": 6})
    code, out, _ = run(["iso", "--config", sampled, "--seed", "4"], capsys)
    assert code == 0 and json.loads(out)["disagreements"] == []
    # M6 disagreements are reported, not fatal
    m6 = write(tmp_path, "m6.json", {"spec": {"l1": 2, "l2": 3}, "family": "M6", "count": 3})
    code, out, _ = run(["iso", "--config", m6], capsys)
    assert code == 0 and json.loads(out)["disagreements"]


def test_table_matches_golden(tmp_path, capsys):
    code, out, _ = run(["table", "--config", str(DATA / "table_2_2.json"), "--text", "--seed", "0"], capsys)
    assert code == 0
    assert out == (DATA / "table_2_2.golden.txt").read_text()


def test_table_deterministic_files(tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"t{i}.json"
        assert run(["table", "--config", str(DATA / "table_2_2.json"), "--seed", "7", "--out", str(p)], capsys)[0] == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["ok"] is True


def test_flavor_override(tmp_path, capsys):
    cfg = write(tmp_path, "a.json", {"l1": 3, "l2": 3, "elam": 1})
    code, out, _ = run(["pideg", "--config", cfg, "--flavor", "AltA2"], capsys)
    assert code == 0 and json.loads(out)["pi_degree"] == 9


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, "a.json", {"l1": 2, "l2": 2})
    proc = subprocess.run(
        [sys.executable, "-m", "qweyl", "pideg", "--config", cfg], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["pi_degree"] == 4


def test_internal_error_exit_3(tmp_path, capsys, monkeypatch):
    import qweyl.cli as cli

    def boom(args, cfg):
        raise RuntimeError("unexpected")

    monkeypatch.setitem(cli.COMMANDS, "pideg", (boom, ""))
    code, _, err = run(["pideg"], capsys)
    assert code == 3 and "RuntimeError" in err


@pytest.mark.parametrize("cmd", ["build", "verify", "oracle"])
def test_missing_family(tmp_path, capsys, cmd):
    cfg = write(tmp_path, "a.json", {"spec": {"l1": 2, "l2": 2}})
    assert run([cmd, "--config", cfg], capsys)[0] == 2
