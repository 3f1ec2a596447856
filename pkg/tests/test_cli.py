import json
import subprocess
import sys

import numpy as np
import pytest

from phinoise import read_npy, sample_noise, write_npy
from phinoise.cli import main


def run(argv):
    """Invoke the CLI in process, folding argparse exits into return codes."""
    try:
        return main(argv)
    except SystemExit as err:
        return int(err.code)


def condition_argv(ref, out, *extra, domain="temporal"):
    return ["condition", "--ref", str(ref), "--domain", domain, "--out", str(out), *extra]


@pytest.fixture
def ref_path(tmp_path):
    p = tmp_path / "ref.npy"
    code = run(
        [
            "synth",
            "--pattern",
            "moving-blob",
            "--shape",
            "8,8,8,2",
            "--period",
            "4",
            "--amplitude",
            "2",
            "--out",
            str(p),
        ]
    )
    assert code == 0
    return p


class TestConditionFlow:
    def test_synth_condition_analyze(self, tmp_path, ref_path, capsys):
        out = tmp_path / "out.npy"
        report = tmp_path / "report.json"
        code = run(
            condition_argv(
                ref_path,
                out,
                "--shape",
                "8,8,8,2",
                "--seed",
                "5",
                "--k",
                "2",
                "--report",
                str(report),
            )
        )
        assert code == 0
        printed = capsys.readouterr().out
        assert f"wrote {out}" in printed and f"wrote {report}" in printed

        blob = json.loads(report.read_text())
        assert set(blob) == {"version", "config", "energies", "beta", "whiteness", "band_profile"}
        assert blob["config"]["command"] == "condition"
        assert blob["config"]["gamma"] == 30.0
        assert blob["config"]["k"] == 2
        e = blob["energies"]
        assert e["output"] == pytest.approx(e["input"], rel=1e-9)
        assert e["low"] + e["high"] == pytest.approx(e["input"], rel=1e-9)
        assert blob["whiteness"]["verdict"] == "PASS"
        assert blob["beta"] > 1.0

        analysis = tmp_path / "analysis.json"
        code = run(
            [
                "analyze",
                "--in",
                str(out),
                "--ref",
                str(ref_path),
                "--domain",
                "temporal",
                "--report",
                str(analysis),
            ]
        )
        assert code == 0
        blob = json.loads(analysis.read_text())
        assert blob["config"]["command"] == "analyze"
        assert "phase_kl" in blob
        assert blob["beta"] is None

    def test_noise_file_input(self, tmp_path, ref_path):
        noise = tmp_path / "noise.npy"
        write_npy(sample_noise((8, 8, 8, 2), seed=3), noise)
        out = tmp_path / "out.npy"
        code = run(condition_argv(ref_path, out, "--noise", str(noise)))
        assert code == 0
        assert read_npy(out).shape == (8, 8, 8, 2)

    def test_spatial_defaults(self, tmp_path, ref_path):
        out = tmp_path / "out.npy"
        report = tmp_path / "report.json"
        code = run(
            condition_argv(
                ref_path,
                out,
                "--shape",
                "8,8,8,2",
                "--report",
                str(report),
                domain="spatial",
            )
        )
        assert code == 0
        blob = json.loads(report.read_text())
        assert blob["config"]["gamma"] == 4.0
        assert blob["config"]["ratio"] == 0.05

    def test_temporal_defaults(self, tmp_path, ref_path):
        out = tmp_path / "out.npy"
        report = tmp_path / "report.json"
        code = run(
            condition_argv(ref_path, out, "--shape", "8,8,8,2", "--report", str(report))
        )
        assert code == 0
        blob = json.loads(report.read_text())
        assert blob["config"]["gamma"] == 30.0
        assert blob["config"]["k"] == 3

    def test_same_seed_same_bytes(self, tmp_path, ref_path):
        outs = []
        for name in ("a.npy", "b.npy"):
            out = tmp_path / name
            code = run(condition_argv(ref_path, out, "--shape", "8,8,8,2"))
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_analyze_without_ref_omits_kl(self, tmp_path, ref_path):
        report = tmp_path / "r.json"
        code = run(
            ["analyze", "--in", str(ref_path), "--domain", "temporal", "--report", str(report)]
        )
        assert code == 0
        assert "phase_kl" not in json.loads(report.read_text())


class TestUsageErrors:
    def test_missing_out_flag(self, ref_path):
        argv = ["condition", "--ref", str(ref_path), "--domain", "temporal", "--shape", "8,8,8,2"]
        assert run(argv) == 2

    def test_missing_domain_flag(self, tmp_path, ref_path):
        argv = [
            "condition",
            "--ref",
            str(ref_path),
            "--shape",
            "8,8,8,2",
            "--out",
            str(tmp_path / "o.npy"),
        ]
        assert run(argv) == 2

    def test_noise_and_shape_conflict(self, tmp_path, ref_path):
        noise = tmp_path / "noise.npy"
        write_npy(sample_noise((8, 8, 8, 2), seed=0), noise)
        argv = condition_argv(
            ref_path, tmp_path / "o.npy", "--noise", str(noise), "--shape", "8,8,8,2"
        )
        assert run(argv) == 2

    def test_neither_noise_nor_shape(self, tmp_path, ref_path):
        assert run(condition_argv(ref_path, tmp_path / "o.npy")) == 2

    def test_shape_mismatch_against_ref(self, tmp_path, ref_path):
        argv = condition_argv(ref_path, tmp_path / "o.npy", "--shape", "4,8,8,2")
        assert run(argv) == 2

    def test_k_with_spatial_domain(self, tmp_path, ref_path):
        argv = condition_argv(
            ref_path, tmp_path / "o.npy", "--shape", "8,8,8,2", "--k", "2", domain="spatial"
        )
        assert run(argv) == 2

    def test_ratio_with_temporal_domain(self, tmp_path, ref_path):
        argv = condition_argv(
            ref_path, tmp_path / "o.npy", "--shape", "8,8,8,2", "--ratio", "0.25"
        )
        assert run(argv) == 2

    def test_cutoff_too_large(self, tmp_path, ref_path):
        argv = condition_argv(ref_path, tmp_path / "o.npy", "--shape", "8,8,8,2", "--k", "5")
        assert run(argv) == 2

    def test_malformed_shape_string(self, tmp_path, ref_path):
        argv = condition_argv(ref_path, tmp_path / "o.npy", "--shape", "8x8x8x2")
        assert run(argv) == 2

    def test_synth_static_rejects_motion_flags(self, tmp_path):
        argv = [
            "synth",
            "--pattern",
            "static-checker",
            "--shape",
            "4,8,8,1",
            "--dx",
            "1",
            "--out",
            str(tmp_path / "o.npy"),
        ]
        assert run(argv) == 2

    def test_synth_blob_needs_one_motion_family(self, tmp_path):
        argv = [
            "synth",
            "--pattern",
            "moving-blob",
            "--shape",
            "4,8,8,1",
            "--period",
            "4",
            "--amplitude",
            "2",
            "--dx",
            "1",
            "--out",
            str(tmp_path / "o.npy"),
        ]
        assert run(argv) == 2
        argv = [
            "synth",
            "--pattern",
            "moving-blob",
            "--shape",
            "4,8,8,1",
            "--period",
            "4",
            "--out",
            str(tmp_path / "o.npy"),
        ]
        assert run(argv) == 2


class TestFileErrors:
    def test_corrupt_npy_exits_3(self, tmp_path, ref_path):
        bad = tmp_path / "bad.npy"
        bad.write_bytes(b"not an array container")
        assert run(condition_argv(ref_path, tmp_path / "o.npy", "--noise", str(bad))) == 3

    def test_fortran_npy_exits_3(self, tmp_path):
        f = tmp_path / "fortran.npy"
        np.save(f, np.asfortranarray(np.zeros((8, 8, 8, 2))))
        assert run(condition_argv(f, tmp_path / "o.npy", "--shape", "8,8,8,2")) == 3

    def test_missing_input_exits_3(self, tmp_path):
        argv = [
            "analyze",
            "--in",
            str(tmp_path / "absent.npy"),
            "--domain",
            "temporal",
            "--report",
            str(tmp_path / "r.json"),
        ]
        assert run(argv) == 3

    def test_wrong_rank_exits_3(self, tmp_path):
        f = tmp_path / "rank3.npy"
        np.save(f, np.zeros((8, 8, 8)))
        argv = [
            "analyze",
            "--in",
            str(f),
            "--domain",
            "temporal",
            "--report",
            str(tmp_path / "r.json"),
        ]
        assert run(argv) == 3


class TestNumericErrors:
    def test_zero_noise_exits_4(self, tmp_path, ref_path):
        zeros = tmp_path / "zeros.npy"
        np.save(zeros, np.zeros((8, 8, 8, 2)))
        assert run(condition_argv(ref_path, tmp_path / "o.npy", "--noise", str(zeros))) == 4


class TestSweep:
    def test_temporal_grid(self, tmp_path, ref_path):
        outdir = tmp_path / "grid"
        outdir.mkdir()
        code = run(
            [
                "sweep",
                "--ref",
                str(ref_path),
                "--domain",
                "temporal",
                "--gammas",
                "4,30",
                "--ks",
                "1,2",
                "--outdir",
                str(outdir),
            ]
        )
        assert code == 0
        names = sorted(p.name for p in outdir.glob("*.npy"))
        assert names == ["out_g30_k1.npy", "out_g30_k2.npy", "out_g4_k1.npy", "out_g4_k2.npy"]
        blob = json.loads((outdir / "report.json").read_text())
        assert blob["config"]["command"] == "sweep"
        assert len(blob["entries"]) == 4
        for entry in blob["entries"]:
            assert entry["beta"] >= 1.0
            e = entry["energies"]
            assert e["output"] == pytest.approx(e["input"], rel=1e-9)

    def test_grid_shares_one_noise_draw(self, tmp_path, ref_path):
        outdir = tmp_path / "grid"
        outdir.mkdir()
        code = run(
            [
                "sweep",
                "--ref",
                str(ref_path),
                "--domain",
                "temporal",
                "--gammas",
                "1",
                "--ks",
                "1,2",
                "--outdir",
                str(outdir),
            ]
        )
        assert code == 0
        # gamma 1 keeps magnitudes untouched, so both outputs differ only
        # through the phases swapped inside their masked bands
        a = read_npy(outdir / "out_g1_k1.npy")
        b = read_npy(outdir / "out_g1_k2.npy")
        assert not np.array_equal(a.data, b.data)
        assert np.sum(a.data**2) == pytest.approx(np.sum(b.data**2), rel=1e-9)

    def test_temporal_sweep_rejects_ratios(self, tmp_path, ref_path):
        argv = [
            "sweep",
            "--ref",
            str(ref_path),
            "--domain",
            "temporal",
            "--gammas",
            "4",
            "--ratios",
            "0.05",
            "--outdir",
            str(tmp_path),
        ]
        assert run(argv) == 2

    def test_spatial_grid(self, tmp_path, ref_path):
        outdir = tmp_path / "sgrid"
        outdir.mkdir()
        code = run(
            [
                "sweep",
                "--ref",
                str(ref_path),
                "--domain",
                "spatial",
                "--gammas",
                "4",
                "--ratios",
                "0.05,0.25",
                "--outdir",
                str(outdir),
            ]
        )
        assert code == 0
        names = sorted(p.name for p in outdir.glob("*.npy"))
        assert names == ["out_g4_r0.05.npy", "out_g4_r0.25.npy"]


class TestConsoleScript:
    def test_version_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "phinoise", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip().startswith("phinoise ")

    def test_two_processes_agree_byte_for_byte(self, tmp_path, ref_path):
        outs = []
        for name in ("p1.npy", "p2.npy"):
            out = tmp_path / name
            proc = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "phinoise",
                    "condition",
                    "--ref",
                    str(ref_path),
                    "--domain",
                    "temporal",
                    "--shape",
                    "8,8,8,2",
                    "--seed",
                    "9",
                    "--out",
                    str(out),
                ],
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_usage_error_message_on_stderr(self, tmp_path, ref_path):
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "phinoise",
                "condition",
                "--ref",
                str(ref_path),
                "--domain",
                "temporal",
                "--out",
                str(tmp_path / "o.npy"),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
        assert proc.stderr.strip() != ""
