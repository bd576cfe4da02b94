"""Trace CSV and summary JSON serialization."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .metrics import TraceSummary

FORMAT_VERSION = 1
CSV_COLUMNS = ("step", "time_s", "travel_lambda", "tx_x", "tx_y", "tx_z",
               "h_re", "h_im", "mag_db", "phase_deg")


def _num(v: float) -> str:
    # repr is the shortest string that round-trips the double exactly
    return repr(float(v))


def trace_rows(trace) -> list[list[str]]:
    mag = np.abs(trace.h)
    with np.errstate(divide="ignore"):
        mag_db = 20.0 * np.log10(mag)
    phase_deg = np.degrees(np.angle(trace.h))
    travel = trace.travel_lambda
    rows = []
    for i in range(len(trace)):
        x, y, z = trace.tx_positions[i]
        rows.append([str(int(trace.steps[i])), _num(trace.time_s[i]), _num(travel[i]),
                     _num(x), _num(y), _num(z), _num(trace.h[i].real), _num(trace.h[i].imag),
                     _num(mag_db[i]), _num(phase_deg[i])])
    return rows


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trace_to_csv(trace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(trace_rows(trace))
    return buf.getvalue()


def write_trace_csv(trace, path) -> None:
    _atomic_write(Path(path), trace_to_csv(trace))


def read_trace_csv(path) -> dict[str, np.ndarray]:
    """Load a trace CSV into column arrays; ``h`` is rebuilt as complex."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = [[float(v) for v in r] for r in reader]
    data = np.array(rows, dtype=np.float64).reshape(-1, len(CSV_COLUMNS))
    cols = {name: data[:, i] for i, name in enumerate(CSV_COLUMNS)}
    cols["h"] = cols["h_re"] + 1j * cols["h_im"]
    return cols


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def summary_document(summary: TraceSummary, mode: str, config_echo: dict) -> dict:
    return {"format_version": FORMAT_VERSION, "mode": mode,
            "summary": summary.to_dict(), "config": config_echo}


def comparison_document(summaries: dict[str, TraceSummary], config_echo: dict) -> dict:
    doc = {"format_version": FORMAT_VERSION, "config": config_echo}
    doc.update({name: s.to_dict() for name, s in summaries.items()})
    return doc


def write_json(obj, path) -> None:
    _atomic_write(Path(path), dump_json(obj))
