import json
import subprocess
import sys

import numpy as np
import pytest

from chanmetric import channels as C
from chanmetric import cli
from chanmetric import classical as K
from chanmetric import jsonio as J
from chanmetric import metrics as M
from chanmetric.cli import run
from chanmetric.linalg import projector
from chanmetric.optimize import OptConfig
from chanmetric.random import rand_unitary


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def report(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def files(tmp_path):
    return {
        "id2": write(tmp_path, "id2.json", J.channel_to_json(C.identity_channel(2))),
        "dephase": write(tmp_path, "dephase.json", J.channel_to_json(C.dephasing(0.3))),
        "I2": write(tmp_path, "I2.json", J.matrix_to_json(np.eye(2))),
        "Z": write(tmp_path, "Z.json", J.matrix_to_json(np.diag([1, -1]))),
        "S": write(tmp_path, "S.json", J.matrix_to_json(np.diag([1, 1j]))),
        "zero": write(tmp_path, "zero.json", J.matrix_to_json(projector([1, 0]))),
        "mixed": write(tmp_path, "mixed.json", J.matrix_to_json(np.eye(2) / 2)),
        "zpovm": write(tmp_path, "zpovm.json", J.povm_to_json(K.make_povm([projector([1, 0]), projector([0, 1])]))),
        "xpovm": write(tmp_path, "xpovm.json", J.povm_to_json(K.make_povm([projector([1, 1]) / 2, projector([1, -1]) / 2]))),
        "kp": write(tmp_path, "kp.json", {"rows": 2, "cols": 2, "p": [[0.5, 0.1], [0.5, 0.9]]}),
        "kq": write(tmp_path, "kq.json", {"rows": 2, "cols": 2, "p": [[0.25, 0.2], [0.75, 0.8]]}),
        "tmp": tmp_path,
    }


def test_minimax_matches_library(capsys, files):
    rep = report(capsys, ["minimax", "--a", files["id2"], "--b", files["dephase"], "--route", "purification", "--restarts", "30"])
    lib = M.minimax_fidelity(C.identity_channel(2), C.dephasing(0.3), "purification", OptConfig(restarts=30))
    assert abs(rep["values"]["value"] - lib.value) < 1e-11
    assert rep["schema_version"] == "1"
    assert len(rep["diagnostics"]["per_restart_values"]) == 31
    assert "restart_spread" in rep["diagnostics"]
    assert len(rep["inputs"]["a"]["sha256"]) == 64


def test_route_flag_does_not_change_value(capsys, files):
    vals = [report(capsys, ["minimax", "--a", files["id2"], "--b", files["dephase"], "--route", r])["values"]["value"]
            for r in M.ROUTES]
    assert max(vals) - min(vals) < 1e-4


def test_unitary_and_gaussian(capsys, files):
    assert report(capsys, ["unitary", "--u", files["I2"], "--v", files["Z"]])["values"]["value"] == 0.0
    rep = report(capsys, ["unitary", "--u", files["I2"], "--v", files["S"]])
    assert abs(rep["values"]["value"] - 0.707106781187) < 1e-12
    assert report(capsys, ["gaussian", "--mu", "1", "--nu", "4"])["values"]["value"] == 0.8


def test_other_commands(capsys, files):
    rep = report(capsys, ["state-metrics", "--a", files["zero"], "--b", files["mixed"]])
    assert rep["values"]["trace_distance"] == 0.5
    rep = report(capsys, ["channel-fidelity", "--a", files["id2"], "--b", files["id2"]])
    assert abs(rep["values"]["value"] - 1) < 1e-9
    rep = report(capsys, ["cb-distance", "--a", files["id2"], "--b", files["dephase"]])
    assert abs(rep["values"]["value"] - 0.3) < 1e-6
    rep = report(capsys, ["povm", "--a", files["zpovm"], "--b", files["xpovm"]])
    assert abs(rep["values"]["value"] - 2 ** -0.5) < 1e-6
    rep = report(capsys, ["kernel", "--a", files["kp"], "--b", files["kq"]])
    assert abs(rep["values"]["value"] - 0.965925826289) < 1e-12
    rep = report(capsys, ["qbc", "--a", files["id2"], "--b", files["dephase"]])
    assert rep["values"]["chain_slack"] >= -1e-3
    rep = report(capsys, ["lindblad", "--a", files["Z"], "--eps", "0.01"])
    assert rep["values"]["error"] < 1e-4


def test_twelve_significant_digits(capsys, files):
    rep = report(capsys, ["unitary", "--u", files["I2"], "--v", files["S"]])
    assert len(repr(rep["values"]["value"]).replace("0.", "", 1)) <= 12


def test_validation_error_exit_code(capsys, files):
    bad = write(files["tmp"], "bad.json", {"dim_in": 2, "dim_out": 2, "kraus": [{"rows": 2, "cols": 2}]})
    assert run(["minimax", "--a", bad, "--b", files["id2"]]) == 2
    assert "a.kraus[0].data" in capsys.readouterr().err
    assert run(["gaussian", "--mu", "-1", "--nu", "4"]) == 2
    assert run(["minimax", "--a", files["id2"]]) == 2


def test_no_convergence_exit_code(capsys, files, monkeypatch):
    monkeypatch.setattr(cli, "_cfg", lambda args: OptConfig(restarts=1, max_iters=1, tol=1e-12, seed=1))
    a = write(files["tmp"], "dep.json", J.channel_to_json(C.depolarizing(0.3)))
    b = write(files["tmp"], "u.json", J.channel_to_json(C.unitary_channel(rand_unitary(2, np.random.default_rng(2)))))
    assert run(["minimax", "--a", a, "--b", b]) == 3
    out = capsys.readouterr()
    rep = json.loads(out.out)
    assert rep["diagnostics"]["converged"] is False
    assert 0 <= rep["values"]["value"] <= 1
    assert "did not converge" in out.err


def test_seed_env_fallback(capsys, files, monkeypatch):
    monkeypatch.setenv("CHANMETRIC_SEED", "5")
    rep = report(capsys, ["minimax", "--a", files["id2"], "--b", files["dephase"], "--restarts", "2"])
    lib = M.minimax_fidelity(C.identity_channel(2), C.dephasing(0.3), "purification", OptConfig(restarts=2, seed=5))
    assert rep["diagnostics"]["per_restart_values"] == [float(f"{v:.12g}") for v in lib.per_restart_values]
    monkeypatch.setenv("CHANMETRIC_SEED", "x")
    assert run(["minimax", "--a", files["id2"], "--b", files["dephase"]]) == 2


def test_selfcheck(capsys, files):
    a = report(capsys, ["selfcheck", "--restarts", "3"])
    b = report(capsys, ["selfcheck", "--restarts", "3", "--seed", "11"])
    assert a["values"]["failed"] == 0 and b["values"]["failed"] == 0
    assert [c["passed"] for c in a["diagnostics"]["checks"]] == [c["passed"] for c in b["diagnostics"]["checks"]]
    u = J.matrix_to_json(np.eye(2))
    ch = {"dim_in": 2, "dim_out": 2, "kraus": [u]}
    bad = write(files["tmp"], "fix.json", {"pairs": [{"a": ch, "b": {"weights": [-0.5, 1.5], "channels": [ch, ch]}}]})
    assert run(["selfcheck", "--fixture", bad]) == 2
    good = write(files["tmp"], "fix2.json", {"pairs": [{"name": "same", "a": ch, "b": ch}]})
    assert report(capsys, ["selfcheck", "--fixture", good])["values"]["failed"] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "chanmetric", "gaussian", "--mu", "1", "--nu", "9"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["values"]["value"] == 0.6
