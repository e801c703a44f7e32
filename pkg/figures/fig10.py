"""Adiabatic eigenenergies against one-photon detuning: the gap between the
dark state and the nearest bright state closes as the detuning grows.

Input: `qmem adiabatic-frame --delta-grid ...` CSV.
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

    table = load_table(args.frame, ["delta", "E0", "E_minus", "E_plus"])
    deltas = column(table, "delta")

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot(deltas, column(table, "E_plus"), label="E_+")
    ax.plot(deltas, column(table, "E0"), label="E_0 (dark)")
    ax.plot(deltas, column(table, "E_minus"), label="E_-")
    ax.set_xlabel("one-photon detuning (units of g)")
    ax.set_ylabel("eigenenergy (units of g)")
    ax.legend()
    ax.set_title("Adiabatic eigenenergies vs detuning")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
