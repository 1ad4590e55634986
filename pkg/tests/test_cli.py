import io
import json
import subprocess
import sys

import pytest

from lattice_spectra.catalog import render_lattice
from lattice_spectra import cli


@pytest.fixture()
def lattice_dir(tmp_path, cat):
    for name, lat in cat.items():
        (tmp_path / f"{name}.lat").write_text(render_lattice(lat), encoding="utf-8")
    return tmp_path


def run_cli(args):
    buf = io.StringIO()
    code = cli.main(args, out=buf)
    return code, buf.getvalue()


def test_show_m5(lattice_dir):
    code, out = run_cli(["show", str(lattice_dir / "m5.lat")])
    assert code == 0
    assert "distributive: no" in out
    assert "m5 copy" in out
    assert "prime ideals: 0" in out


def test_show_n5(lattice_dir):
    code, out = run_cli(["show", str(lattice_dir / "n5.lat")])
    assert code == 0
    assert "prime ideals: 2" in out


def test_show_chain2(lattice_dir):
    code, out = run_cli(["show", str(lattice_dir / "chain2.lat")])
    assert code == 0
    assert "distributive: yes" in out


def test_spec_bitop_m5(lattice_dir):
    code, out = run_cli(["spec", str(lattice_dir / "m5.lat"), "--bitop"])
    assert code == 0
    assert "points: 6" in out
    assert "tau opens: 8" in out
    assert "tau == sigma: no" in out


def test_spec_classical_m5(lattice_dir):
    code, out = run_cli(["spec", str(lattice_dir / "m5.lat"), "--classical"])
    assert code == 0
    assert "points: 0" in out


def test_spec_diamond_topologies_coincide(lattice_dir):
    code, out = run_cli(["spec", str(lattice_dir / "diamond.lat"), "--bitop"])
    assert code == 0
    assert "points: 2" in out
    assert "tau == sigma: yes" in out


def test_spec_dot_output(lattice_dir, tmp_path):
    dot_path = tmp_path / "m5.dot"
    code, _ = run_cli(["spec", str(lattice_dir / "m5.lat"), "--bitop", "--dot", str(dot_path)])
    assert code == 0
    from lattice_spectra.catalog import validate_dot

    validate_dot(dot_path.read_text(encoding="utf-8"))


def test_verify_single_file(lattice_dir):
    code, out = run_cli(["verify", str(lattice_dir / "m5.lat")])
    assert code == 0
    assert "PASS m5 essential_family" in out
    assert "failures: 0" in out


def test_verify_catalog_structured(lattice_dir):
    code, out = run_cli(["verify", "--catalog", "--format", "structured", "--jobs", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    summary = json.loads(lines[-1])["summary"]
    assert summary["failures"] == 0
    for line in lines[:-1]:
        rec = json.loads(line)
        assert rec["status"] == "PASS"


def test_verify_deterministic_across_jobs(lattice_dir):
    _, out1 = run_cli(["verify", "--exhaustive", "4", "--jobs", "1"])
    _, out2 = run_cli(["verify", "--exhaustive", "4", "--jobs", "3"])
    assert out1 == out2


def test_verify_random(lattice_dir):
    code, out = run_cli(["verify", "--random", "5", "4"])
    assert code == 0
    assert "lattices: 4" in out


def test_verify_nothing_is_input_error():
    code, _ = run_cli(["verify"])
    assert code == 2


def test_input_error_exit_code(tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice x\nelements a b\ncover a a\n", encoding="utf-8")
    code, _ = run_cli(["show", str(bad)])
    assert code == 2
    code, _ = run_cli(["show", str(tmp_path / "missing.lat")])
    assert code == 2


def test_hom_command(lattice_dir, tmp_path):
    hom = tmp_path / "inc.hom"
    hom.write_text("hom inc from chain2 to m5\nmap 0 0\nmap 1 a\n", encoding="utf-8")
    code, out = run_cli(["hom", str(hom), str(lattice_dir / "chain2.lat"), str(lattice_dir / "m5.lat")])
    assert code == 0
    assert "proper: yes (vacuous: target spectrum empty)" in out
    assert "quasi-proper: no witness=" in out


def test_hom_identity(lattice_dir, tmp_path):
    hom = tmp_path / "id.hom"
    hom.write_text("hom id from m5 to m5\n" + "".join(f"map {x} {x}\n" for x in "0abc1"), encoding="utf-8")
    code, out = run_cli(["hom", str(hom), str(lattice_dir / "m5.lat"), str(lattice_dir / "m5.lat")])
    assert code == 0
    assert "quasi-proper: yes" in out
    assert "naturality square: PASS" in out


def test_hom_surjection(lattice_dir, tmp_path):
    hom = tmp_path / "sur.hom"
    hom.write_text(
        "hom sur from diamond to chain2\nmap 0 0\nmap p 1\nmap q 0\nmap 1 1\n", encoding="utf-8"
    )
    code, out = run_cli(["hom", str(hom), str(lattice_dir / "diamond.lat"), str(lattice_dir / "chain2.lat")])
    assert code == 0
    assert "quasi-proper: yes" in out
    assert "pbd-morphism conditions: PASS" in out


def test_console_entrypoint_runs(lattice_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "lattice_spectra.cli", "show", str(lattice_dir / "m5.lat")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "distributive: no" in proc.stdout


def test_jobs_env_cap(lattice_dir, monkeypatch):
    monkeypatch.setenv("LATTICE_SPECTRA_JOBS", "1")
    from lattice_spectra.suites import default_jobs

    assert default_jobs() == 1
    _, out1 = run_cli(["verify", "--exhaustive", "4"])
    monkeypatch.setenv("LATTICE_SPECTRA_JOBS", "3")
    _, out2 = run_cli(["verify", "--exhaustive", "4"])
    assert out1 == out2
