"""Absorption window: writing efficiency against photon detuning, one curve
per scan, with the extracted half-width marked from each sidecar.

Inputs: one or more `qmem detuning-scan` CSVs (delta, efficiency); each
`<scan>.hwhm.json` sidecar supplies the half-width annotation.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib.pyplot as plt

from _shared import column, load_manifest, load_table, save


def scan_label(path: str) -> str:
    manifest = load_manifest(path)
    pulse = manifest.get("parameters", {}).get("model", {}).get("pulse", {})
    if pulse.get("shape") == "gaussian":
        width = pulse.get("width")
        if width is not None:
            return f"T = {width / 2 ** 0.5:g}"
    if pulse.get("shape") == "sigmoid" and "T" in pulse:
        return f"T = {pulse['T']:g}"
    return Path(path).stem


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scans", nargs="+", required=True,
                        help="detuning-scan CSVs")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for path in args.scans:
        table = load_table(path, ["delta", "efficiency"])
        deltas = column(table, "delta")
        effs = column(table, "efficiency")
        label = scan_label(path)
        line, = ax.plot(deltas, effs, marker=".", label=label)
        sidecar = Path(str(path) + ".hwhm.json")
        if sidecar.exists():
            info = json.loads(sidecar.read_text())
            ax.axvline(info["hwhm"], color=line.get_color(), linestyle=":",
                       linewidth=1.0)
            ax.annotate(f"HWHM {info['hwhm']:.1f}",
                        xy=(info["hwhm"], info["peak"] / 2),
                        color=line.get_color(), fontsize=8)
    ax.set_xlabel("photon detuning (units of g)")
    ax.set_ylabel("writing efficiency")
    ax.set_ylim(-0.02, 1.05)
    ax.legend()
    ax.set_title("Absorption window of the memory")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
