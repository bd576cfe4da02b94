"""Checked-in seed-42 triplet must be reproduced on every backend."""
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from chanstatic.cli import main
from chanstatic.serialize import CSV_COLUMNS, read_trace_csv

GOLDEN = Path(__file__).parent / "golden" / "seed42"
FILES = ("fixed.csv", "compensated.csv", "stationary.csv")


def assert_matches_golden(out_dir):
    for name in FILES:
        got = read_trace_csv(out_dir / name)
        want = read_trace_csv(GOLDEN / name)
        for col in CSV_COLUMNS:
            np.testing.assert_allclose(got[col], want[col], rtol=0, atol=1e-9, err_msg=f"{name}:{col}")


def test_golden_in_process(tmp_path):
    assert main(["triplet", "--config", str(GOLDEN / "config.ini"), "--out", str(tmp_path)]) == 0
    assert_matches_golden(tmp_path)


@pytest.mark.parametrize("disable_numba", ["0", "1"])
def test_golden_cli_subprocess(tmp_path, disable_numba):
    env = dict(os.environ, CHANSTATIC_DISABLE_NUMBA=disable_numba)
    subprocess.run([sys.executable, "-m", "chanstatic.cli", "triplet", "--config", str(GOLDEN / "config.ini"),
                    "--out", str(tmp_path)], env=env, check=True)
    assert_matches_golden(tmp_path)
