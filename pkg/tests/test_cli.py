"""End-to-end runs of the console entry point (in process)."""

import numpy as np
import pytest

from nhsym import cli, model, symmetry


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_preset_op_pass(capsys):
    code, out, _ = run(capsys, "check", "--preset", "dirac4a",
                       "--g1", "1", "--g2", "0.5", "--op", "g0")
    assert code == 0
    assert "pass" in out
    assert "residual 0.000e+00" in out


def test_check_preset_op_fail_exits_one(capsys):
    # g5 squares to +1, so it cannot anticommute with the g5 term
    code, out, _ = run(capsys, "check", "--preset", "dirac4a", "--op", "g5")
    assert code == 1
    assert "FAIL" in out


def test_check_op_kind_override(capsys):
    code, out, _ = run(capsys, "check", "--preset", "dirac4a",
                       "--op", "g1", "--kind", "transpose_minus")
    assert code == 0
    assert "transpose_minus" in out


def test_check_complex_argument_spelling(capsys):
    code, _, _ = run(capsys, "check", "--preset", "dirac4a",
                     "--g1", "2+0i", "--g2", "1+0.5i", "--op", "g0")
    assert code == 0


def test_check_declared_hints(capsys):
    code, out, _ = run(capsys, "check", "--preset", "dirac4a")
    assert code == 0
    assert "6/6 declared operators pass" in out


def test_check_flake_hints(capsys):
    code, out, _ = run(capsys, "check", "--preset", "flake",
                       "--g", "1", "--tau", "0.5")
    assert code == 0
    assert "7/7 declared operators pass" in out


def test_check_discover_dimension_eight(capsys):
    code, out, _ = run(capsys, "check", "--preset", "dirac4a",
                       "--discover", "chiral")
    assert code == 0
    assert "chiral solution space dimension 8" in out


def test_check_discover_empty_exits_one(capsys):
    code, out, _ = run(capsys, "check", "--preset", "pyramid-nochiral",
                       "--discover", "chiral")
    assert code == 1
    assert "chiral solution space dimension 0" in out


def test_check_model_file_with_operator_file(capsys, tmp_path):
    m = model.honeycomb_flake(1.0, 0.7)
    mpath = tmp_path / "flake.model"
    model.save_model(m, mpath)
    op = symmetry.named_operator(m, "nhph:sublattice")
    opath = tmp_path / "sublattice.op"
    symmetry.save_op(op, opath)
    code, out, _ = run(capsys, "check", "--file", str(mpath),
                       "--op", str(opath))
    assert code == 0
    assert "pass" in out


def test_check_model_file_without_hints_needs_op(capsys, tmp_path):
    m = model.pyramid("nochiral", 1.0, 0.5, 0.8)
    mpath = tmp_path / "pyr.model"
    model.save_model(m, mpath)
    code, _, err = run(capsys, "check", "--file", str(mpath))
    assert code == 2
    assert "--op or --discover" in err


def test_check_bad_model_file(capsys, tmp_path):
    bad = tmp_path / "bad.model"
    bad.write_text("n_sites 3\nhop 0 7 1 0\n")
    code, _, err = run(capsys, "check", "--file", str(bad))
    assert code == 2
    assert "error:" in err


def test_check_expression_needs_four_sites(capsys):
    code, _, err = run(capsys, "check", "--preset", "flake", "--op", "g0")
    assert code == 2
    assert "4-site" in err


def test_ep_jordan2(capsys):
    code, out, _ = run(capsys, "ep", "--family", "jordan2",
                       "--bracket", "-0.1", "0.1")
    assert code == 0
    assert "exceptional point at parameter" in out
    assert "order 2" in out


def test_ep_flake_order_three(capsys):
    code, out, _ = run(capsys, "ep", "--fig", "1b",
                       "--bracket", "1.0", "2.0")
    assert code == 0
    assert "order 3" in out
    param = float(out.split("parameter")[1].splitlines()[0])
    assert param == pytest.approx(np.sqrt(2.0), abs=1e-6)


def test_ep_chain_not_found(capsys):
    code, out, _ = run(capsys, "ep", "--fig", "5b",
                       "--bracket", "0", "1.00499")
    assert code == 1
    assert "no exceptional point" in out
    assert "best spread" in out


def test_sweep_writes_deterministic_outputs(capsys, tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    code_a, text, _ = run(capsys, "sweep", "--fig", "2b",
                          "--steps", "80", "--out", str(out_a))
    code_b, _, _ = run(capsys, "sweep", "--fig", "2b",
                       "--steps", "80", "--out", str(out_b))
    assert code_a == code_b == 0
    assert "origin spectrum symmetry" in text
    for fname in ("2b_trajectories.csv", "2b_events.json"):
        first = (out_a / fname).read_bytes()
        second = (out_b / fname).read_bytes()
        assert first == second
    header = (out_a / "2b_trajectories.csv").read_text().splitlines()[0]
    assert header == "param,mode_id,re,im,flags"


def test_sweep_origin_only_protocol(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--fig", "2c",
                       "--steps", "60", "--out", str(tmp_path))
    assert code == 0
    assert "origin spectrum symmetry" in out
    assert "real spectrum symmetry" not in out


def test_usage_errors_exit_two(capsys):
    assert cli.main([]) == 2
    capsys.readouterr()
    assert cli.main(["check"]) == 2
    capsys.readouterr()
    assert cli.main(["ep", "--family", "jordan2"]) == 2
    capsys.readouterr()
    assert cli.main(["sweep", "--fig", "9z"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
    capsys.readouterr()
