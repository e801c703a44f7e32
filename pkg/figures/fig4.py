"""Writing/reading efficiency landscape over drive strength and pulse time.

Input: one or two `qmem sweep` CSVs (omega0, T, efficiency), log-log axes.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt
import numpy as np

from _shared import column, load_table, pivot_grid, save


def _panel(ax, path: str, title: str) -> None:
    table = load_table(path, ["omega0", "T", "efficiency"])
    omegas, ts, grid = pivot_grid(column(table, "omega0"), column(table, "T"),
                                  column(table, "efficiency"))
    mesh = ax.pcolormesh(ts, omegas, grid, cmap="magma", vmin=0.0, vmax=1.0,
                         shading="nearest")
    if omegas.size > 1 and ts.size > 1:
        cs = ax.contour(ts, omegas, grid, levels=[0.95], colors="cyan",
                        linewidths=1.2)
        ax.clabel(cs, fmt="%.2f", fontsize=8)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("characteristic time T")
    ax.set_ylabel("peak Rabi frequency omega0")
    ax.set_title(title)
    return mesh


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--writing", required=True, help="writing sweep CSV")
    parser.add_argument("--reading", default=None, help="optional reading sweep CSV")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    n_panels = 2 if args.reading else 1
    fig, axes = plt.subplots(1, n_panels, figsize=(6.0 * n_panels, 4.5),
                             squeeze=False)
    mesh = _panel(axes[0, 0], args.writing, "writing efficiency")
    if args.reading:
        mesh = _panel(axes[0, 1], args.reading, "reading efficiency")
    fig.colorbar(mesh, ax=axes.ravel().tolist(), label="efficiency")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
