"""Loading and validation helpers shared by the figure scripts.

These scripts are deliberately thin: every number is read from a qmem
artifact (CSV or JSON); no physics is recomputed here.
"""

import csv
import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402


def fail(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(1)


def load_table(path: str, required: list[str]) -> dict[str, list[str]]:
    """Read a delimited artifact, insisting on the required columns."""
    p = Path(path)
    if not p.exists():
        raise fail(f"input not found: {path}")
    with open(p, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in required:
            if column not in header:
                raise fail(f"{path}: missing required column '{column}'")
        rows = list(reader)
    if not rows:
        raise fail(f"{path}: no data rows")
    return {name: [row[name] for row in rows] for name in header}


def column(table: dict[str, list[str]], name: str) -> np.ndarray:
    return np.array([float(v) for v in table[name]])


def load_json(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise fail(f"input not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise fail(f"{path}: invalid JSON ({exc})")


def load_manifest(artifact_path: str) -> dict:
    """Manifest written next to an artifact; empty dict when absent."""
    p = Path(str(artifact_path) + ".manifest.json")
    if not p.exists():
        return {}
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError:
        return {}


def pivot_grid(x: np.ndarray, y: np.ndarray, z: np.ndarray):
    """Reshape long-format (x, y, z) rows onto the sorted unique grid."""
    xs = np.unique(x)
    ys = np.unique(y)
    grid = np.full((xs.size, ys.size), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    grid[xi, yi] = z
    return xs, ys, grid


def save(fig, out: str, metadata: dict | None = None) -> None:
    kwargs = {"dpi": 150, "bbox_inches": "tight"}
    if metadata and str(out).lower().endswith(".png"):
        kwargs["metadata"] = metadata
    fig.savefig(out, **kwargs)
    plt.close(fig)
    print(f"wrote {out}")
