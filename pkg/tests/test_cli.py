"""Command-line interface: flags, config files, exit codes, outputs."""

import os

import numpy as np
import pytest

from adp.cli import main


def read_lines(path):
    with open(path) as fh:
        return fh.read().splitlines()


class TestExitCodes:
    def test_gradcheck_success(self, capsys):
        assert main(["gradcheck", "--n", "6", "--seed", "3", "--tol", "1e-5"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_unknown_flag_is_validation_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gradcheck", "--bogus"])
        assert exc.value.code == 1

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_bad_value_is_validation_error(self, tmp_path):
        rc = main(["experiment", "--n", "1", "--iters", "1", "--out", str(tmp_path)])
        assert rc == 1

    def test_divergence_is_numerical_failure(self, tmp_path):
        rc = main([
            "experiment", "--n", "16", "--alphas", "1e-2", "--delta", "1e-3",
            "--iters", "40", "--lr", "1e9", "--mode", "unroll", "--out", str(tmp_path),
        ])
        assert rc == 2


class TestExperimentCommand:
    def test_writes_tables(self, tmp_path):
        rc = main([
            "experiment", "--n", "20", "--alphas", "1e-3,1e-2", "--delta", "1e-3",
            "--seed", "1", "--iters", "4", "--out", str(tmp_path),
        ])
        assert rc == 0
        names = sorted(os.listdir(tmp_path))
        assert names == [
            "b_opt_0.001.csv", "b_opt_0.01.csv",
            "data_0.001.csv", "data_0.01.csv",
            "recon_0.001.csv", "recon_0.01.csv",
            "summary.csv",
            "trace_0.001.csv", "trace_0.01.csv",
        ]

    def test_unroll_mode(self, tmp_path):
        rc = main([
            "experiment", "--n", "16", "--alphas", "1e-2", "--delta", "1e-3",
            "--iters", "4", "--mode", "unroll", "--L", "5", "--out", str(tmp_path),
        ])
        assert rc == 0

    def test_byte_identical_reruns(self, tmp_path):
        args = [
            "experiment", "--n", "20", "--alphas", "1e-2", "--target-snr-db", "17.0",
            "--seed", "4", "--iters", "6",
        ]
        d1, d2 = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(d1)]) == 0
        assert main(args + ["--out", str(d2)]) == 0
        for name in sorted(os.listdir(d1)):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_override(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "# experiment settings\n"
            "n=20\n"
            "alphas=1e-2\n"
            "delta=1e-3\n"
            "iters=3\n"
            f"out={tmp_path / 'from_config'}\n"
        )
        assert main(["experiment", "--config", str(cfg)]) == 0
        assert os.path.isdir(tmp_path / "from_config")

        override = tmp_path / "override"
        assert main(["experiment", "--config", str(cfg), "--out", str(override)]) == 0
        assert os.path.isdir(override)

    def test_missing_config_file(self):
        assert main(["gradcheck", "--config", "/does/not/exist.cfg"]) == 1

    def test_malformed_config_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("this is not a key value pair\n")
        assert main(["gradcheck", "--config", str(cfg)]) == 1


class TestOtherCommands:
    def test_filters(self, tmp_path):
        out = tmp_path / "filters.csv"
        rc = main(["filters", "--alphas", "1e-3", "--sigma-min", "1e-4",
                   "--sigma-max", "1", "--points", "50", "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "sigma,tikhonov_0.001,tsvd_0.001,soft_tsvd_0.001"
        assert len(lines) == 51

    def test_landweber(self, tmp_path):
        out = tmp_path / "landweber.csv"
        rc = main(["landweber", "--n", "24", "--iters", "30", "--delta", "1e-3",
                   "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "iter,residual,true_error"
        assert len(lines) == 32
        residuals = np.array([float(l.split(",")[1]) for l in lines[1:]])
        assert np.all(np.diff(residuals) <= 1e-12)

    def test_optimality(self, tmp_path):
        out = tmp_path / "opt.csv"
        rc = main(["optimality", "--alpha", "1e-3", "--nu", "0.5,1,3", "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        assert len(lines) == 10  # header + 3 families x 3 nu
        header = lines[0].split(",")
        ok2 = header.index("ok2")
        fam = header.index("family")
        nu = header.index("nu")
        rows = [l.split(",") for l in lines[1:]]
        tik3 = next(r for r in rows if r[fam] == "tikhonov" and float(r[nu]) == 3.0)
        soft3 = next(r for r in rows if r[fam] == "soft_tsvd" and float(r[nu]) == 3.0)
        assert tik3[ok2] == "0"
        assert soft3[ok2] == "1"
