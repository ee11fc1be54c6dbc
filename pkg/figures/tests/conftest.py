import os
import shutil
import subprocess
import sys

import pytest

os.environ.setdefault("MPLBACKEND", "Agg")


def adp_command() -> list[str]:
    """The primary package's CLI, the only interface these tests consume."""
    exe = shutil.which("adp")
    return [exe] if exe else [sys.executable, "-m", "adp.cli"]


def run_adp(*args: str) -> None:
    proc = subprocess.run(adp_command() + list(args), capture_output=True, text=True)
    assert proc.returncode == 0, f"adp {' '.join(args)} failed: {proc.stderr}"


@pytest.fixture(scope="session")
def experiment_dir(tmp_path_factory):
    """A small real experiment run, shared by the rendering tests."""
    out = tmp_path_factory.mktemp("experiment")
    run_adp(
        "experiment", "--n", "40", "--alphas", "1e-3,1e-2", "--target-snr-db", "17.0",
        "--seed", "0", "--iters", "60", "--mode", "exact", "--lr", "0.05",
        "--out", str(out),
    )
    return out


@pytest.fixture(scope="session")
def filters_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("filters") / "filters.csv"
    run_adp("filters", "--alphas", "1e-3,1e-2", "--sigma-min", "1e-6",
            "--sigma-max", "10", "--points", "400", "--out", str(out))
    return out
