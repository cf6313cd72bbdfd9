import json
import math
import subprocess
import sys

import numpy as np
import pytest

from negabound import bounds
from negabound.cli import main
from negabound.specs import state_to_spec
from negabound.states import negativity_exact, random_mixed

BELL = '{"kind": "bell_like", "lambda0": 0.5}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_neg(capsys):
    assert run(capsys, "neg", BELL)[:2] == (0, "0.5\n")
    assert run(capsys, "neg", '{"kind": "noisy", "lambda0": 0.3, "p": 0}')[1] == "0\n"


def test_neg_invalid_spec(capsys):
    code, _, err = run(capsys, "neg", '{"kind": "noisy", "lambda0": 0.3}')
    assert code == 1 and "p" in err
    assert run(capsys, "neg", "/no/such/file.json")[0] == 1


def test_neg_raw_file_round_trip(tmp_path, capsys):
    s = random_mixed((3, 2), 4, 21)
    f = tmp_path / "state.json"
    f.write_text(json.dumps(state_to_spec(s)))
    code, out, _ = run(capsys, "neg", str(f))
    assert code == 0
    assert float(out) == pytest.approx(negativity_exact(s), rel=1e-11)


def test_bound_first_qubit(capsys):
    code, out, _ = run(capsys, "bound", BELL, "--method", "first_qubit", "--json")
    assert code == 0
    assert json.loads(out)["lower_bound"] == pytest.approx(0.5 * (math.sqrt(2) - 1))


def test_bound_second_method_quadratic_mode(capsys):
    code, out, _ = run(capsys, "bound", BELL, "--method", "second_method", "--mode", "quadratic", "--json")
    assert code == 0
    assert json.loads(out)["lower_bound"] == pytest.approx(math.sqrt(5) - 2, abs=1e-9)


def test_bound_not_applicable_on_product_state(capsys):
    prod = '{"kind": "bell_like", "lambda0": 0.0}'
    for m in ("first_qubit", "first_improved", "second_method", "second_qubit", "multi_block"):
        code, out, _ = run(capsys, "bound", prod, "--method", m, "--json")
        cert = json.loads(out)
        assert code == 2 and cert["lower_bound"] == 0 and not cert["applicable"]


def test_bound_writes_round_trippable_json(tmp_path, capsys):
    out = tmp_path / "c.json"
    run(capsys, "bound", '{"kind": "noisy", "lambda0": 0.4, "p": 0.9}', "--method", "first_improved", "--json", "--out", str(out))
    cert = bounds.BoundCertificate.from_json(out.read_text())
    assert bounds.BoundCertificate.from_json(cert.to_json()) == cert


def test_bound_with_operator_file_and_blocks(tmp_path, capsys):
    ops = tmp_path / "ops.json"
    ops.write_text(json.dumps({"blocks": [{"preset": "four_qubit_fine1"}, {"preset": "four_qubit_fine2"}]}))
    code, out, _ = run(capsys, "bound", '{"kind": "four_qubit_symmetric", "lambda00": 0.2}', "--method", "multi_block", "--operators", str(ops), "--json")
    assert code == 0 and json.loads(out)["inputs"]["kappas"] == pytest.approx([0.04, 0.09])


def test_bound_auto_search(capsys):
    code, out, _ = run(capsys, "bound", '{"kind": "bell_like", "lambda0": 0.3}', "--method", "first_qubit", "--auto-search", "--restarts", "3", "--json")
    canon = bounds.bound_first_qubit(0.21).lower_bound
    assert code == 0 and json.loads(out)["lower_bound"] >= canon - 1e-12


def test_bound_bad_method_and_bad_operators(capsys):
    with pytest.raises(SystemExit):
        main(["bound", BELL, "--method", "nope"])
    capsys.readouterr()
    assert run(capsys, "bound", BELL, "--method", "first_qubit", "--operators", '{"preset": "zzz"}')[0] == 1
    assert run(capsys, "bound", '{"kind": "max_entangled", "n": 3}', "--method", "first_qubit")[0] == 1


def test_kappa(capsys):
    code, out, _ = run(capsys, "kappa", '{"kind": "noisy", "lambda0": 0.3, "p": 0.8}', "--json")
    assert code == 0
    assert json.loads(out)["kappa"] == pytest.approx(0.64 * 0.21 - 0.05)


def test_sweep_to_csv(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    assert run(capsys, "sweep", "--figure", "fig1_p1", "--points", "11", "--out", str(out))[0] == 0
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "lambda0,kappa_first,negativity_exact,first_qubit"
    assert lines[1] == "0,0,0,"
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"state": {"kind": "noisy", "p": 1.0}, "variable": "lambda0", "range": [0, 1], "points": 11, "quantities": ["kappa_first", "negativity_exact", "first_qubit"]}))
    out2 = tmp_path / "s.csv"
    run(capsys, "sweep", str(spec), "--out", str(out2))
    assert out2.read_bytes() == out.read_bytes()


def test_sweep_unwritable(capsys):
    assert run(capsys, "sweep", "--figure", "fig2", "--points", "3", "--out", "/nonexistent/dir/x.csv")[0] == 1


def test_search(capsys):
    code, out, _ = run(capsys, "search", '{"kind": "bell_like", "lambda0": 0.3}', "--restarts", "3", "--json")
    res = json.loads(out)
    assert code == 0 and res["best_bound"] >= res["canonical_bound"]


def test_dicke_rabi(capsys):
    code, out, _ = run(capsys, "dicke", "rabi", "--points", "21")
    rows = np.array([list(map(float, line.split(","))) for line in out.splitlines()[1:]])
    assert code == 0 and rows.shape == (21, 3)
    np.testing.assert_allclose(rows[:, 1], rows[:, 2], atol=1e-11)


def test_dicke_check_and_bound(capsys):
    code, out, _ = run(capsys, "dicke", "check", "--t", "3.7", "--json")
    assert code == 0 and [p["status"] for p in json.loads(out)["pairs"]] == ["confirmed"] * 3
    code, out, _ = run(capsys, "dicke", "bound", "--j", "6", "--l2", "8", "--t", "168.5", "--json")
    assert code == 0 and json.loads(out)["applicable"]


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "pinching", "--scale", "0.1")
    assert code == 0 and out.startswith("PASS pinching/pinching: 20/20")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "negabound.cli", "neg", BELL], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "0.5\n"
