import math
import subprocess
import sys

BOOST_HALF = math.atan(0.5)


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "photon_fidelity", *args],
                          capture_output=True, text=True, timeout=240)


def test_theta_boost(tmp_path):
    r = run_cli("theta", "--transform", "boost-y", "--param", "0.5",
                "--theta", str(math.pi / 4), "--phi", "0.0")
    assert r.returncode == 0, r.stderr
    assert abs(float(r.stdout.strip()) - BOOST_HALF) <= 1e-9
    assert r.stdout.strip() == "0.463647609"


def test_theta_rejects_superluminal():
    r = run_cli("theta", "--transform", "boost-y", "--param", "1.5",
                "--theta", "0.3", "--phi", "0.0")
    assert r.returncode == 2
    assert "error:" in r.stderr


def test_curve_writes_csv_and_figure(tmp_path):
    out = tmp_path / "fm.csv"
    r = run_cli("curve", "--measure", "m", "--a-min", "0", "--a-max", "2",
                "--steps", "5", "--out", str(out))
    assert r.returncode == 0, r.stderr
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "a_over_l,fidelity"
    assert len(lines) == 6
    a, v = (float(t) for t in lines[3].split(","))
    assert a == 1.0
    assert abs(v - (math.pi / 4) ** 2) <= 1e-8
    assert (tmp_path / "fm.png").exists()
    assert "wrote 5 rows" in r.stdout


def test_curve_no_figure(tmp_path):
    out = tmp_path / "bare.csv"
    r = run_cli("curve", "--measure", "m", "--steps", "3", "--a-max", "1",
                "--out", str(out), "--no-figure")
    assert r.returncode == 0, r.stderr
    assert out.exists()
    assert not (tmp_path / "bare.png").exists()


def test_curve_rejects_unknown_measure(tmp_path):
    r = run_cli("curve", "--measure", "x", "--out", str(tmp_path / "x.csv"))
    assert r.returncode == 2


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 3\n")
    r = run_cli("--config", str(cfg), "theta", "--transform", "rotation-y",
                "--param", "0.3", "--theta", "0.3", "--phi", "0.0")
    assert r.returncode == 2
    assert "unknown key" in r.stderr


def test_extension_stdout_with_config(tmp_path):
    # s/l is scale free, so length_scale=2 must not move the printed column
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# loose run\nrel_tol = 1e-6\nlength_scale = 2.0\n")
    r = run_cli("--config", str(cfg), "extension", "--measure", "m",
                "--n-photons", "1", "--no-figure")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().split("\n")
    assert lines[0] == "n_photons,extension_over_l"
    n, s = (float(t) for t in lines[1].split(","))
    assert n == 1.0
    assert abs(s - 3.2949757) <= 1e-4


def test_verify_norms():
    r = run_cli("verify", "--suite", "norms")
    assert r.returncode == 0, r.stderr
    assert "suite norms: PASS" in r.stdout
    assert r.stdout.count("ok") == 4
