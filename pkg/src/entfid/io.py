"""State files, CSV tables and run manifests."""
import csv
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .states import DensityMatrix, PureState, validate_density

SIG_DIGITS = 12


def fmt(x) -> str:
    """12 significant digits; -0 prints as 0."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, f".{SIG_DIGITS}g")


def quantize(values) -> np.ndarray:
    """Round-trip values through their printed form."""
    return np.array([float(fmt(v)) for v in np.asarray(values, dtype=np.float64).tolist()])


def state_from_json(data: dict):
    if "re" in data:
        re = np.asarray(data["re"], dtype=np.float64)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=np.float64)
        return PureState(re + 1j * im)
    if "rho_re" in data:
        re = np.asarray(data["rho_re"], dtype=np.float64)
        im = np.asarray(data.get("rho_im", np.zeros_like(re)), dtype=np.float64)
        return validate_density(re + 1j * im)
    raise ValueError('state JSON needs either "re"/"im" or "rho_re"/"rho_im" keys')


def state_to_json(state) -> dict:
    if isinstance(state, PureState):
        a = state.amplitudes
        return {"re": a.real.tolist(), "im": a.imag.tolist()}
    m = state.matrix if isinstance(state, DensityMatrix) else np.asarray(state)
    return {"rho_re": m.real.tolist(), "rho_im": m.imag.tolist()}


def read_state(path):
    with open(path) as fh:
        return state_from_json(json.load(fh))


def write_state(path, state) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(state), fh, indent=2)
        fh.write("\n")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])


def read_csv_columns(path) -> dict:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV file") from None
        columns = {name: [] for name in header}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            for name, cell in zip(header, row):
                columns[name].append(cell)
    return columns


def manifest(command: str, config: dict, backend: str) -> dict:
    return {
        "tool": "entfid",
        "version": __version__,
        "command": command,
        "backend": backend,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
