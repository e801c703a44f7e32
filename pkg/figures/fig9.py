"""Dark-state composition against drive strength: how much of the dark state
sits on the ground and metastable levels as the control field varies.

Input: `qmem adiabatic-frame --omega-grid ...` CSV.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt

from _shared import column, load_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frame", required=True, help="adiabatic-frame CSV")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    table = load_table(args.frame, ["omega", "dark_g_weight", "dark_s_weight"])
    omegas = column(table, "omega")
    wg = column(table, "dark_g_weight")
    ws = column(table, "dark_s_weight")

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot(omegas, wg, label="ground weight")
    ax.plot(omegas, ws, label="metastable weight")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("drive strength omega0 (units of g)")
    ax.set_ylabel("dark-state weight")
    ax.legend()
    ax.set_title("Dark-state mixing vs drive strength")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
