"""Storage dynamics under decoherence: population transfer curves per run,
plus the final stored population of each run.

Inputs: one or more `qmem simulate` trajectory CSVs. Curve labels come from
the decay rates recorded in each CSV's manifest.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt
import numpy as np

from _shared import column, load_manifest, load_table, save


def run_label(path: str) -> str:
    manifest = load_manifest(path)
    decay = manifest.get("parameters", {}).get("model", {}).get("decay", {})
    active = {k: v for k, v in decay.items() if v}
    if not active:
        return Path(path).stem if not manifest else "no decay"
    return ", ".join(f"{k}={v:g}" for k, v in sorted(active.items()))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trajectories", nargs="+", required=True,
                        help="simulate trajectory CSVs")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    fig, (ax_dyn, ax_final) = plt.subplots(
        2, 1, figsize=(6.5, 7.0), height_ratios=[2.2, 1.0])

    labels, finals = [], []
    for path in args.trajectories:
        table = load_table(path, ["t", "pop_s0"])
        t = column(table, "t")
        pop = column(table, "pop_s0")
        label = run_label(path)
        ax_dyn.plot(t, pop, label=label)
        labels.append(label)
        finals.append(pop[-1])

    ax_dyn.set_xlabel("time (1/g)")
    ax_dyn.set_ylabel("stored population")
    ax_dyn.set_ylim(-0.02, 1.02)
    ax_dyn.legend(fontsize=8)
    ax_dyn.set_title("Population transfer under decoherence")

    xs = np.arange(len(labels))
    ax_final.bar(xs, finals, color="tab:blue", alpha=0.8)
    ax_final.set_xticks(xs, labels, rotation=20, fontsize=8, ha="right")
    ax_final.set_ylabel("final population")
    ax_final.set_ylim(0, 1.05)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
