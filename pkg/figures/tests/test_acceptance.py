"""Acceptance: the four-panel experiment row renders from a full-size run."""

import subprocess

from conftest import adp_command, run_adp

from adp_figures.cli import main


def test_criterion10_four_panel_row(tmp_path):
    """From an n=200 experiment (the reproduction setup: exact mode, lr
    0.05, SNR 17 dB, singular-vector target), `adp-fig row` renders the
    reconstruction / log-error-with-baseline / update-norm / operator-heatmap
    row without error."""
    out = tmp_path / "exp"
    run_adp(
        "experiment", "--n", "200", "--alphas", "1e-3", "--target-snr-db", "17.0",
        "--seed", "0", "--index", "4", "--iters", "300", "--mode", "exact",
        "--lr", "0.05", "--out", str(out),
    )
    fig = tmp_path / "row.png"
    rc = main([
        "row",
        "--in", str(out / "trace_0.001.csv"), str(out / "recon_0.001.csv"),
        str(out / "b_opt_0.001.csv"),
        "--out", str(fig),
    ])
    ok = rc == 0 and fig.stat().st_size > 0
    print(f"{'PASS' if ok else 'FAIL'} criterion-10 figure-pipeline -- {fig}")
    assert ok

    # the installed adp-fig entry point renders the same row
    proc = subprocess.run(
        ["adp-fig", "row", "--in", str(out / "trace_0.001.csv"),
         str(out / "recon_0.001.csv"), str(out / "b_opt_0.001.csv"),
         "--out", str(tmp_path / "row2.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
