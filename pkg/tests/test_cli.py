import io
from fractions import Fraction as F

import pytest

from cardbin.cli import main
from cardbin.core import read_instance, read_packing


def call(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def small_k4(tmp_path):
    inst, cert = tmp_path / "small_k4_l1.bpcc", tmp_path / "small_k4_l1.pack"
    code, text = call("gen", "--family", "ff-small", "--k", 4, "--ell", 1, "--out", inst,
                      "--cert", cert)
    assert code == 0 and "cert 8 exact" in text
    return inst, cert


def test_run_ff_small(small_k4, tmp_path):
    inst, _ = small_k4
    code, text = call("run", "--alg", "ff", "--k", 4, "--in", inst, "--out", tmp_path / "ff.pack",
                      "--trace", tmp_path / "ff.trace")
    assert code == 0 and text == "bins 16\n"
    instance = read_instance(inst.read_text())
    assert read_packing((tmp_path / "ff.pack").read_text(), instance).num_bins == 16
    assert read_packing((tmp_path / "ff.trace").read_text(), instance).num_bins == 16


def test_duel_abs_k3_ff():
    code, text = call("duel", "--adversary", "abs-k3", "--alg", "ff")
    assert code == 0
    assert text.splitlines()[-1] == "duel abs-k3 vs ff k=3 ratio=7/4 (1.750000)"


def test_duel_abs_k4plus_with_eps():
    code, text = call("duel", "--adversary", "abs-k4plus", "--alg", "tf", "--k", 5,
                      "--eps", "1/100")
    assert code == 0 and "ratio=2/1 (2.000000)" in text


def test_duel_batch():
    code, text = call("duel", "--adversary", "batch", "--alg", "ff", "--k", 7, "--n", 42)
    assert code == 0
    assert "lb_value 217/143" in text and text.splitlines()[-1].startswith("duel batch vs ff k=7")


def test_verify_packing_failure(tmp_path):
    (tmp_path / "x.bpcc").write_text("BPCC v1\nk 2\nitem 1/2 x3\n")
    (tmp_path / "bad.pack").write_text("PACKING v1\nbins 1\nbin 0: 0 1 2\n")
    code, text = call("verify", "--what", "packing", "--k", 2, "--in", tmp_path / "x.bpcc",
                      "--packing", tmp_path / "bad.pack")
    assert code == 1 and "count 3 > k=2" in text


def test_verify_weights_and_invariants(small_k4, tmp_path):
    inst, cert = small_k4
    call("run", "--alg", "ff", "--in", inst, "--trace", tmp_path / "t")
    code, text = call("verify", "--what", "weights", "--k", 4, "--in", inst, "--opt", cert)
    assert code == 0 and "opt-bin-weights: pass" in text and "ff-total-weight: pass" in text
    code, text = call("verify", "--what", "ff-invariants", "--k", 4, "--in", inst,
                      "--packing", tmp_path / "t", "--opt", cert)
    assert code == 0 and "trace-minimality: pass" in text
    code, _ = call("verify", "--what", "tf-invariants", "--k", 4, "--in", inst)
    assert code == 0


def test_verify_random_sweep_is_deterministic():
    args = ("verify", "--what", "weights", "--k", 5, "--random", 30, "--seed", 7)
    first = call(*args)
    assert first[0] == 0 and first == call(*args)
    assert "pass" in first[1]


def test_opt_round_trip(tmp_path):
    (tmp_path / "i.bpcc").write_text("BPCC v1\nk 3\nitem 3/5\nitem 1/2\nitem 2/5\nitem 3/10\n")
    code, text = call("opt", "--in", tmp_path / "i.bpcc", "--out", tmp_path / "o.pack")
    assert code == 0 and text == "opt 2 exact\n"
    code, text = call("verify", "--what", "packing", "--in", tmp_path / "i.bpcc",
                      "--packing", tmp_path / "o.pack")
    assert code == 0


def test_gen_round_trip_batch(tmp_path):
    code, _ = call("gen", "--family", "batch", "--k", 7, "--n", 42, "--stop", 3,
                   "--delta", "1/5000", "--out", tmp_path / "b.bpcc", "--cert", tmp_path / "b.pack")
    assert code == 0
    inst = read_instance((tmp_path / "b.bpcc").read_text())
    assert inst.sizes[0] == F(1, 42) - F(3, 5000)
    code, text = call("verify", "--what", "packing", "--in", tmp_path / "b.bpcc",
                      "--packing", tmp_path / "b.pack")
    assert code == 0


def test_table_output():
    code, text = call("table", "--k-from", 4, "--k-to", 5)
    lines = text.splitlines()
    assert code == 0 and len(lines) == 3
    assert "=2/1 (2.000000)" in lines[1] and ">=31/15 (2.066667)" in lines[2]
    assert "32/15 (2.133333)" in lines[2]


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("run", "--alg", "ff"),
    ("run", "--alg", "best", "--in", "x"),
    ("duel", "--adversary", "abs-k3", "--alg", "ff", "--frobnicate"),
    ("gen", "--family", "batch", "--k", 7, "--out", "x"),
    ("run", "--alg", "ff", "--in", "/nonexistent/file"),
    ("duel", "--adversary", "abs-k3", "--alg", "alg5"),
    ("verify", "--what", "weights", "--random", 3),
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = call(*argv)
    assert code == 2
    err = capsys.readouterr().err.strip()
    assert err and len(err.splitlines()) == 1


def test_k_mismatch_is_usage_error(small_k4):
    inst, _ = small_k4
    assert call("run", "--alg", "ff", "--k", 3, "--in", inst)[0] == 2


def test_console_script_is_deterministic():
    import subprocess
    import sys

    argv = [sys.executable, "-m", "cardbin.cli", "duel", "--adversary", "abs-k4plus", "--alg", "ff"]
    runs = [subprocess.run(argv, capture_output=True, text=True) for _ in range(2)]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout.splitlines()[-1] == "duel abs-k4plus vs ff k=4 ratio=2/1 (2.000000)"
