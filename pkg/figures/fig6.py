"""Residual dark-state population against pulse time for each cavity decay
rate, with the p = 0.5 no-cloning threshold marked.

Input: `qmem analytic-decay` CSV (T, kappa, omega0, final_population).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt
import numpy as np

from _shared import column, load_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--decay", required=True, help="analytic-decay CSV")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    table = load_table(args.decay, ["T", "kappa", "omega0", "final_population"])
    ts = column(table, "T")
    kappas = column(table, "kappa")
    pops = column(table, "final_population")

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for kappa in np.unique(kappas):
        mask = kappas == kappa
        order = np.argsort(ts[mask])
        ax.plot(ts[mask][order], pops[mask][order], marker=".",
                label=f"kappa = {kappa:g}")
    ax.axhline(0.5, color="crimson", linestyle="--", linewidth=1.2,
               label="no-cloning limit p = 0.5")
    ax.set_xscale("log")
    ax.set_xlabel("characteristic time T (1/g)")
    ax.set_ylabel("final dark-state population")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    ax.set_title("Photon loss limits the usable pulse time")
    save(fig, args.out, metadata={
        "Description": ("dark-state population vs characteristic time; "
                        "horizontal reference line at the no-cloning limit p=0.5")})
    return 0


if __name__ == "__main__":
    sys.exit(main())
