import json
import subprocess
import sys

import pytest

from qrcube import cli, cube


def run(argv, capsys):
    rc = cli.main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


def test_conv_demo_prints_sum(capsys):
    rc, out, _ = run(["conv", "demo"], capsys)
    assert rc == 0
    assert out.split("# sum\n")[1] == "-0.5,0.4,0.7\n0.3,1.9,1.9\n0.5,1.5,1\n"
    rc, out, _ = run(["conv", "demo", "--format", "json"], capsys)
    assert json.loads(out)["sum"] == [[-0.5, 0.4, 0.7], [0.3, 1.9, 1.9], [0.5, 1.5, 1.0]]


def test_band_check(capsys):
    rc, out, _ = run(["band", "check", "--variant", "mirror", "--samples", "25", "--format", "json"], capsys)
    rep = json.loads(out)
    assert rc == 0 and rep["ok"] and rep["max_deviation"] <= 1e-8 and rep["samples"] == 25


def test_band_sweep_csv_and_json(tmp_path, capsys):
    out_file = tmp_path / "bands.csv"
    args = ["band", "sweep", "--variant", "antimirror", "--re-n", "3", "--im-n", "2", "--out", str(out_file)]
    assert run(args, capsys)[0] == 0
    first = out_file.read_bytes()
    assert run(args, capsys)[0] == 0
    assert out_file.read_bytes() == first
    assert len(first.decode().splitlines()) == 7
    rc, out, _ = run(["band", "sweep", "--re-n", "1", "--im-n", "1", "--format", "json"], capsys)
    assert len(json.loads(out)[0]["eigenvalues"]) == 4


def test_cube_new_apply_search(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["cube", "new", "--order", "3", "--out", str(a)], capsys)[0] == 0
    assert run(["cube", "apply", "--state", str(a), "--moves", "R1(1) U'1(2)", "--out", str(b)], capsys)[0] == 0
    rc, out, _ = run(["cube", "search", "--start", str(a), "--target", str(b), "--max-depth", "3",
                      "--format", "json"], capsys)
    res = json.loads(out)
    assert rc == 0 and res["found"] and res["length"] == 2
    assert cube.apply(cube.loads(a.read_text()), res["sequence"]) == cube.loads(b.read_text())


def test_cube_apply_empty_is_identity(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(["cube", "new", "--kind", "bbh", "--out", str(a)], capsys)
    rc, out, _ = run(["cube", "apply", "--state", str(a), "--moves", ""], capsys)
    assert rc == 0 and out == a.read_text()


def test_cube_spin(capsys):
    rc, out, _ = run(["cube", "spin", "--format", "json"], capsys)
    res = json.loads(out)
    assert rc == 0 and res["reaches_target"] is False and res["search"]["found"]


def test_stark_commands(capsys):
    rc, out, _ = run(["stark", "fig5", "--scales", "0.6,1", "--f-n", "3", "--format", "json"], capsys)
    rows = json.loads(out)
    assert rc == 0 and len(rows) == 6
    assert run(["stark", "splitting", "--scales", "0.6,1", "--f-n", "3", "--format", "json"], capsys)[1] == out
    assert rows[-1]["splitting_perturbative"] == pytest.approx(0.6)
    rc, out, _ = run(["stark", "dipole", "--format", "json"], capsys)
    d = json.loads(out)
    assert abs(d["B"] + 3) < 1e-8
    rc, out, _ = run(["stark", "cube", "--apply"], capsys)
    assert rc == 0 and json.loads(out)["order"] == 5


def test_unfold(tmp_path, capsys):
    st, svg = tmp_path / "s.json", tmp_path / "d.svg"
    run(["cube", "new", "--order", "5", "--out", str(st)], capsys)
    assert run(["unfold", "--order", "5", "--state", str(st), "--out", str(svg)], capsys)[0] == 0
    assert svg.read_text().count('class="node"') == 150
    rc, out, _ = run(["unfold", "--order", "2", "--format", "json"], capsys)
    assert rc == 0 and len(json.loads(out)["nodes"]) == 24
    rc, _, err = run(["unfold", "--order", "4", "--state", str(st)], capsys)
    assert rc == 1 and "does not match" in err


def test_validation_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["band", "sweep", "--bogus"])
    assert info.value.code == 1
    assert "usage:" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        cli.main(["nosuch"])
    assert info.value.code == 1
    rc, _, err = run(["cube", "apply", "--state", str(tmp_path / "missing.json"), "--moves", ""], capsys)
    assert rc == 1 and "cannot read" in err
    a = tmp_path / "a.json"
    run(["cube", "new", "--out", str(a)], capsys)
    rc, _, err = run(["cube", "apply", "--state", str(a), "--moves", "U1(2)"], capsys)
    assert rc == 1 and "offset 3" in err
    rc, _, err = run(["cube", "apply", "--state", str(a)], capsys)
    assert rc == 1 and "--moves" in err
    rc, _, err = run(["conv", "demo", "--out", str(tmp_path / "no" / "x.txt")], capsys)
    assert rc == 1
    rc, _, _ = run(["band", "check", "--samples", "10"], capsys)
    assert rc == 1


def test_convergence_exit_code(monkeypatch, capsys):
    from qrcube.errors import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("no", 1.0)

    monkeypatch.setattr(cli.stark, "dipole_coefficients", boom)
    rc, _, err = run(["stark", "dipole"], capsys)
    assert rc == 2 and "convergence" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[band.check]\nvariant = "antimirror"\nsamples = 4\n')
    rc, out, _ = run(["band", "check", "--config", str(cfg), "--format", "json"], capsys)
    rep = json.loads(out)
    assert rep["variant"] == "antimirror" and rep["samples"] == 4
    rc, out, _ = run(["band", "check", "--config", str(cfg), "--samples", "9", "--format", "json"], capsys)
    assert json.loads(out)["samples"] == 9
    shared = tmp_path / "shared.toml"
    shared.write_text('format = "json"\nmoves = "U1(1)"\n[band]\nsamples = 4\n')
    rc, out, _ = run(["band", "check", "--config", str(shared)], capsys)
    assert rc == 0 and json.loads(out)["samples"] == 4
    bad = tmp_path / "bad.toml"
    bad.write_text("[band.check]\nbogus = 1\n")
    rc, _, err = run(["band", "check", "--config", str(bad)], capsys)
    assert rc == 1 and "bogus" in err
    bad.write_text('[band.check]\nvariant = "sideways"\n')
    assert run(["band", "check", "--config", str(bad)], capsys)[0] == 1
    bad.write_text("samples = [\n")
    assert run(["band", "check", "--config", str(bad)], capsys)[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qrcube", "conv", "demo", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["sum"][1] == [0.3, 1.9, 1.9]


def test_config_supplies_required_inputs(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(["cube", "new", "--order", "2", "--out", str(a)], capsys)
    cfg = tmp_path / "c.toml"
    cfg.write_text(f'[cube.apply]\nstate = "{a}"\nmoves = "R1(1)"\n')
    rc, out, _ = run(["cube", "apply", "--config", str(cfg)], capsys)
    assert rc == 0 and cube.loads(out) == cube.apply(cube.loads(a.read_text()), "R1(1)")
