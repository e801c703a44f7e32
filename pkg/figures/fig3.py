"""Transfer-probability landscape of the semi-classical double-Gaussian drive.

Input: `qmem benchmark-stirap` CSV (omega0, tau, prob_s).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt
import numpy as np

from _shared import column, load_table, pivot_grid, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--benchmark", required=True, help="benchmark-stirap CSV")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    table = load_table(args.benchmark, ["omega0", "tau", "prob_s"])
    omegas, taus, grid = pivot_grid(column(table, "omega0"),
                                    column(table, "tau"),
                                    column(table, "prob_s"))

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(taus, omegas, grid, cmap="viridis", vmin=0.0, vmax=1.0,
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label="final metastable population")
    ax.set_xlabel("pulse delay tau")
    ax.set_ylabel("peak Rabi frequency omega0")
    ax.set_title("Double-Gaussian transfer benchmark")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
