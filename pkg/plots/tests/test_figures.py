"""Figure regression: golden CSVs in, deterministic images out.

The golden CSVs are produced by the primary package's CLI (its external
interface); the scripts under test never import the primary package.
"""

import os
import subprocess
import sys
from pathlib import Path

import pytest

PLOTS = Path(__file__).resolve().parents[1]
ROOT = PLOTS.parent
SRC = ROOT / "src"


def run_cli(args, cwd=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run([sys.executable, *args], capture_output=True,
                          text=True, cwd=cwd or str(PLOTS), env=env)


@pytest.fixture(scope="module")
def golden(tmp_path_factory):
    """Golden CSVs generated once through the ldgm CLI."""
    base = tmp_path_factory.mktemp("golden")
    u_csv = base / "u.csv"
    rd_csv = base / "rd.csv"
    v_csv = base / "v.csv"
    specs = [
        (u_csv, ["-m", "ldgm", "curve", "--degrees", "4",
                 "--d-range", "0.11:0.11:1", "--profile-distortion", "0.11",
                 "--profile-points", "401", "--out", str(u_csv)]),
        (rd_csv, ["-m", "ldgm", "curve", "--degrees", "3,4,6",
                  "--points", "13", "--out", str(rd_csv)]),
        (v_csv, ["-m", "ldgm", "curve", "--degrees", "4", "--dv", "4",
                 "--dc", "8", "--d-range", "0.11:0.11:1",
                 "--profile-distortion", "0.11", "--profile-points", "401",
                 "--out", str(v_csv)]),
    ]
    for path, args in specs:
        proc = run_cli(args)
        assert proc.returncode == 0, proc.stderr
        assert path.exists()
    return {"u": u_csv, "rd": rd_csv, "v": v_csv}


SCRIPTS = {"u": "plot_u.py", "rd": "plot_rd.py", "v": "plot_v.py"}


class TestRendering:
    @pytest.mark.parametrize("fig", ["u", "rd", "v"])
    def test_writes_image_and_is_pixel_identical(self, golden, tmp_path, fig):
        out1 = tmp_path / f"{fig}_1.png"
        out2 = tmp_path / f"{fig}_2.png"
        for out in (out1, out2):
            proc = run_cli([SCRIPTS[fig], "--csv", str(golden[fig]),
                            "--out", str(out)])
            assert proc.returncode == 0, proc.stderr
            assert out.exists()
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_u_reference_line_comes_from_csv(self, golden):
        # The reference is the shannon row, not a recomputed constant.
        text = golden["u"].read_text()
        assert any(line.startswith("shannon,") for line in text.splitlines())


class TestEmbeddedAssertions:
    def test_v_above_line_rejected(self, golden, tmp_path):
        doctored = tmp_path / "v_bad.csv"
        lines = golden["v"].read_text().splitlines()
        out = []
        for line in lines:
            if line.startswith("compound-profile,"):
                parts = line.split(",")
                parts[5] = str(float(parts[5]) + 0.2)
                line = ",".join(parts)
            out.append(line)
        doctored.write_text("\n".join(out) + "\n")
        target = tmp_path / "v_bad.png"
        proc = run_cli(["plot_v.py", "--csv", str(doctored),
                        "--out", str(target)])
        assert proc.returncode != 0
        assert "exceeds the rate line" in proc.stderr
        assert not target.exists()

    def test_rd_ordering_violation_rejected(self, golden, tmp_path):
        doctored = tmp_path / "rd_bad.csv"
        lines = golden["rd"].read_text().splitlines()
        out = []
        for line in lines:
            if line.startswith("ldgm,3,"):
                parts = line.split(",")
                parts[5] = str(float(parts[5]) - 0.3)
                line = ",".join(parts)
            out.append(line)
        doctored.write_text("\n".join(out) + "\n")
        target = tmp_path / "rd_bad.png"
        proc = run_cli(["plot_rd.py", "--csv", str(doctored),
                        "--out", str(target)])
        assert proc.returncode != 0
        assert not target.exists()

    def test_u_flat_profile_rejected(self, golden, tmp_path):
        doctored = tmp_path / "u_bad.csv"
        lines = golden["u"].read_text().splitlines()
        out = []
        reference = None
        for line in lines:
            if line.startswith("shannon,"):
                reference = line.split(",")[5]
            if line.startswith("ldgm-profile,") and reference is not None:
                parts = line.split(",")
                parts[5] = reference  # clamp the hump to the reference
                line = ",".join(parts)
            out.append(line)
        doctored.write_text("\n".join(out) + "\n")
        target = tmp_path / "u_bad.png"
        proc = run_cli(["plot_u.py", "--csv", str(doctored),
                        "--out", str(target)])
        assert proc.returncode != 0
        assert "never exceeds" in proc.stderr
        assert not target.exists()


class TestInputValidation:
    def test_empty_csv_errors_without_output(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("# nothing\nvariant,c,dv,dc,D,R,argmax_w,w\n")
        target = tmp_path / "nothing.png"
        for script in SCRIPTS.values():
            proc = run_cli([script, "--csv", str(empty), "--out", str(target)])
            assert proc.returncode != 0
            assert not target.exists()

    def test_missing_columns_hard_error(self, tmp_path):
        bad = tmp_path / "cols.csv"
        bad.write_text("variant,R\nldgm,0.5\n")
        target = tmp_path / "cols.png"
        proc = run_cli(["plot_u.py", "--csv", str(bad), "--out", str(target)])
        assert proc.returncode != 0
        assert "missing columns" in proc.stderr
        assert not target.exists()
