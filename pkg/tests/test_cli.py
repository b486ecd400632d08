import json
import subprocess
import sys

import numpy as np
import pytest

from sl2o.cli import dumps, main

R2 = np.sqrt(2.0)
BOOST = [{"mu": [R2, 0, 0, 1 / R2], "nu": [0, 0, 0, 0], "q": [1, 0, 0, 0, 0, 0, 0]}]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_table(capsys):
    code, out = run(capsys, "table")
    assert code == 0
    assert out["examples"] == {"e3*e5": "e1", "e1*e4": "-e6"}


def test_verify_pass_and_report_schema(capsys):
    code, out = run(capsys, "verify", "moufang", "--seed", "3", "--samples", "50")
    assert code == 0 and out["passed"] is True
    for check in out["checks"]:
        assert set(check) >= {"name", "value", "bound", "passed"}


def test_verify_tolerance_override_fails(capsys):
    code, out = run(capsys, "verify", "g2-tangent", "--samples", "1", "--tol.basis-pairs=1e-300")
    assert code == 1 and out["passed"] is False
    check = next(c for c in out["checks"] if c["name"] == "basis-pairs")
    assert check["bound"] == 1e-300 and check["value"] > 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "lemma4", "--tol.lemma4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "lemma4", "--samples", "0"])
    assert exc.value.code == 2
    assert main(["g2", "dump", "--r", "3", "3"]) == 2
    assert main(["sl2o", "matrix", "--word", "[{\"mu\": [2,0,0,2], \"nu\": [0,0,0,0], \"q\": [1,0,0,0,0,0,0]}]"]) == 2


def test_seed_determinism(capsys):
    argv = ["verify", "lemma-u3", "--seed", "11", "--samples", "30"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_env_seed_matches_flag():
    env = {"OCTO_SEED": "5", "PATH": ""}
    base = [sys.executable, "-m", "sl2o", "verify", "lemma4", "--samples", "10"]
    a = subprocess.run(base, capture_output=True, text=True, env=env).stdout
    b = subprocess.run(base + ["--seed", "5"], capture_output=True, text=True).stdout
    assert a == b and a


def test_g2_commands(capsys):
    code, out = run(capsys, "g2", "tangent", "--a", "e1", "--b", "e2")
    assert code == 0 and out["distance"] < 1e-5
    code, out = run(capsys, "g2", "dump", "--f", "1", "2", "4", "--t", "0.3")
    m = np.array(out["matrix"])
    assert out["is_derivation"] is False
    assert np.allclose(m.T @ m, np.eye(8))
    code, out = run(capsys, "g2", "dump", "--ab", "e1", "e2")
    assert out["is_derivation"] is True


def test_iso_commands(capsys):
    z = [0.0] * 8
    elem = json.dumps({"m": {"a": z, "b": z, "c": z, "d": z}, "cd": [0, 0, 0, 0, 0, 0, 0, 1.0], "g": [[0.0] * 8] * 8})
    code, out = run(capsys, "iso", "dump", "--level", "3", "--element", elem)
    assert code == 0 and out["matrix"][2][3] == -2.0
    code, out = run(capsys, "iso", "check", "--level", "2", "--samples", "10")
    assert code == 0 and out["max_residual"] < 1e-9


def test_sl2o_apply_and_matrix(capsys, tmp_path):
    vec = json.dumps({"level": 3, "coords": [1.0] + [0.0] * 9})
    code, out = run(capsys, "sl2o", "apply", "--word", "[]", "--vec", vec)
    assert out["coords"] == [1.0] + [0.0] * 9
    path = tmp_path / "w.json"
    path.write_text(json.dumps(BOOST))
    code, out = run(capsys, "sl2o", "matrix", "--word", f"@{path}")
    lam = np.array(out["matrix"])
    assert np.isclose(lam[0, 0], 1.25) and np.isclose(lam[0, 9], 0.75)
    code, out = run(capsys, "sl2o", "apply", "--word", str(path), "--vec", vec)
    assert np.allclose(out["coords"], lam[:, 0])


def test_sl2o_check_det_and_tangent(capsys):
    z, e1, e2 = [0.0] * 8, [0.0, 1] + [0.0] * 6, [0.0, 0, 1] + [0.0] * 5
    m = json.dumps({"a": z, "b": e1, "c": e2, "d": z})
    code, out = run(capsys, "sl2o", "check-det", "--matrix", m, "--trials", "5")
    assert out["kind"] == "not-preserving" and out["preserving"] is False
    code, out = run(capsys, "sl2o", "tangent", "--family", "comm", "--params", "3")
    assert np.allclose(out["element"]["cd"], [0, 0, 0, 1, 0, 0, 0, 0], atol=1e-8)


def test_out_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert main(["table", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["examples"]["e3*e5"] == "e1"


def test_dumps_precision():
    assert dumps({"x": 0.1}) == '{"x": 0.10000000000000001}'
    assert dumps([1.0, np.float64(2.5), np.int64(3), True]) == "[1.0, 2.5, 3, true]"
    assert json.loads(dumps(np.arange(3.0))) == [0.0, 1.0, 2.0]
