import json
import subprocess
import sys

import numpy as np
import pytest

from oscfock import ModePair, SU2CoherentSpec, load_state, su2_coherent
from oscfock import verify
from oscfock.cli import EXIT_CONVERGENCE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from oscfock.observables import DispersionReport

SU2_RING_ARGS = ["--nu", "40", "--alpha-mod", "0.8660", "--alpha-arg", "1.5708", "--beta-mod", "0.5", "--beta-arg", "0"]
TWO_LOBE_ARGS = ["--psi-mod", "1", "--psi-arg", "0", "--r", "10", "--theta", "0",
              "--alpha-mod", "0.8660", "--beta-mod", "0.5", "--terms", "20"]


def run(*args):
    return main([str(a) for a in args])


def test_vacuum_state_file(tmp_path):
    out = tmp_path / "vac.json"
    assert run("state", "coherent1d", "--z-mod", 0, "--z-arg", 0, "-o", out) == EXIT_OK
    s = load_state(out)
    assert s.coeffs[0] == 1 and s.norm == 1
    assert s.metadata["config"]["kind"] == "coherent1d"


def test_su2_ring_state_round_trip(tmp_path, capsys):
    out = tmp_path / "ring.json"
    assert run("state", "su2cs", *SU2_RING_ARGS, "-o", out) == EXIT_OK
    assert "rescaled" in capsys.readouterr().err  # 0.8660 is not exactly sqrt3/2
    s = load_state(out)
    meta = s.metadata["config"]
    pair, _ = ModePair.rescaled(0.8660 * np.exp(1.5708j), 0.5)
    ref = su2_coherent(SU2CoherentSpec(40, pair), 40)
    assert np.array_equal(s.coeffs, ref.coeffs)
    assert meta["nu"] == 40 and meta["mode_rescale"] != 1.0


def test_truncated_squeezed_state_flagged(tmp_path):
    out = tmp_path / "lobes.json"
    assert run("state", "squeezed2d", *TWO_LOBE_ARGS, "-o", out) == EXIT_OK
    s = load_state(out)
    assert s.unnormalized and s.cutoff == 19


def test_observables_refuses_unnormalized(tmp_path, capsys):
    out = tmp_path / "lobes.json"
    run("state", "squeezed2d", *TWO_LOBE_ARGS, "-o", out)
    assert run("observables", out) == EXIT_USAGE
    assert "unnormalized" in capsys.readouterr().err
    assert run("observables", out, "--allow-unnormalized") == EXIT_OK


def test_observables_reports(tmp_path, capsys):
    st = tmp_path / "su2.json"
    run("state", "su2cs", "--nu", 40, "--alpha-mod", np.sqrt(3) / 2, "--alpha-arg", np.pi / 2,
        "--beta-mod", 0.5, "-o", st)
    capsys.readouterr()
    assert run("observables", st) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["varX"] == pytest.approx(30.5, abs=1e-10)
    assert rep["varY"] == pytest.approx(10.5, abs=1e-10)
    assert abs(rep["delta"]["varX"]) < 1e-10

    vac = tmp_path / "sv.json"
    run("state", "squeezedvac", "--r", 0.5, "--alpha-mod", 1, "-o", vac)
    capsys.readouterr()
    run("observables", vac)
    rep = json.loads(capsys.readouterr().out)
    assert rep["products"][0] == pytest.approx(0.5, abs=1e-8)
    assert rep["config"]["command"] == "observables"


def test_density_command(tmp_path):
    st = tmp_path / "vac.json"
    run("state", "coherent1d", "-o", st)  # 1D: density must refuse
    assert run("density", st, "-o", tmp_path / "x.csv") == EXIT_USAGE
    st2 = tmp_path / "lobes.json"
    run("state", "squeezed2d", *TWO_LOBE_ARGS, "-o", st2)
    csv = tmp_path / "lobes.csv"
    assert run("density", st2, "-o", csv, "--nx", 101, "--ny", 101) == EXIT_OK
    meta = json.loads((tmp_path / "lobes.meta.json").read_text())
    assert meta["nx"] == 101 and meta["params"]["config"]["nx"] == 101
    assert meta["maxima_count"] >= 1
    assert load_state(st2).unnormalized  # the state file was not overwritten


def test_density_vacuum_single_maximum(tmp_path):
    st = tmp_path / "v.json"
    run("state", "squeezed2d", "-o", st)
    run("density", st, "-o", tmp_path / "v.csv", "--x-min", -5, "--x-max", 5, "--y-min", -5, "--y-max", 5)
    assert json.loads((tmp_path / "v.meta.json").read_text())["maxima_count"] == 1


def test_range_flags_must_pair(tmp_path):
    with pytest.raises(SystemExit) as info:
        run("density", "s.json", "-o", tmp_path / "x.csv", "--x-min", -1)
    assert info.value.code == EXIT_USAGE


def test_convergence_exit_code(capsys):
    assert run("state", "squeezed1d", "--psi-mod", 1, "--r", 3.5) == EXIT_CONVERGENCE
    assert "oracle" in capsys.readouterr().err
    assert run("state", "coherent1d", "--z-mod", 5, "--cutoff", 10) == EXIT_CONVERGENCE


def test_missing_file():
    assert run("observables", "/nonexistent/state.json") == EXIT_USAGE


def test_stdout_output_parses(capsys):
    assert run("state", "squeezed1d", "--psi-mod", 1, "--r", 0.5) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "fock1d"


def test_verify_passes_on_selected_checks(monkeypatch, capsys):
    monkeypatch.setattr(verify, "CHECKS", [c for c in verify.CHECKS if c[0] in (1, 2, 8)])
    assert run("verify", "--tier", "fast") == EXIT_OK
    assert "3/3 checks passed" in capsys.readouterr().out


def test_verify_catches_sign_mutation(monkeypatch, capsys):
    original = verify.dispersion_2d_analytic

    def flipped(spec, modes):
        rep = original(spec, modes)
        return DispersionReport(rep.varPx, rep.varX, rep.varY, rep.varPy, params=rep.params)

    monkeypatch.setattr(verify, "dispersion_2d_analytic", flipped)
    monkeypatch.setattr(verify, "CHECKS", [c for c in verify.CHECKS if c[0] == 8])
    assert run("verify", "--tier", "fast") == EXIT_VERIFY
    assert "failed: 8 2D dispersions" in capsys.readouterr().out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oscfock.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.1.0"
