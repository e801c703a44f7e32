"""Cavity design curves per defect: coupling constant against cavity volume,
and cavity decay rate (in units of g) against quality factor.

Inputs: the `<report>_gcurve.csv` and `<report>_qcurve.csv` companions of a
`qmem material` run.
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
    parser.add_argument("--gcurve", required=True,
                        help="material gcurve CSV (defect,n,volume_m3,coupling_rad_s)")
    parser.add_argument("--qcurve", required=True,
                        help="material qcurve CSV (defect,quality_factor,kappa_rel)")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    gtab = load_table(args.gcurve, ["defect", "n", "volume_m3", "coupling_rad_s"])
    qtab = load_table(args.qcurve, ["defect", "quality_factor", "kappa_rel"])

    fig, (ax_g, ax_q) = plt.subplots(1, 2, figsize=(11.0, 4.5))

    names = np.array(gtab["defect"])
    volumes = column(gtab, "volume_m3")
    couplings = column(gtab, "coupling_rad_s")
    for style, name in zip(("-", "--", "-.", ":"), dict.fromkeys(names)):
        mask = names == name
        order = np.argsort(volumes[mask])
        ax_g.plot(volumes[mask][order] * 1e18, couplings[mask][order] / 1e6,
                  style, label=name)
    ax_g.set_xscale("log")
    ax_g.set_yscale("log")
    ax_g.set_xlabel("cavity volume (um^3)")
    ax_g.set_ylabel("coupling constant (rad/s / 1e6)")
    ax_g.legend()
    ax_g.set_title("Coupling vs cavity volume")

    qnames = np.array(qtab["defect"])
    qs = column(qtab, "quality_factor")
    kappas = column(qtab, "kappa_rel")
    for style, name in zip(("-", "--", "-.", ":"), dict.fromkeys(qnames)):
        mask = qnames == name
        order = np.argsort(qs[mask])
        ax_q.plot(qs[mask][order], kappas[mask][order], style, label=name)
    ax_q.axhline(0.1, color="gray", linestyle=":", linewidth=1.0,
                 label="kappa = 0.1 g")
    ax_q.set_xscale("log")
    ax_q.set_yscale("log")
    ax_q.set_xlabel("quality factor")
    ax_q.set_ylabel("cavity decay rate (units of g)")
    ax_q.legend()
    ax_q.set_title("Decay rate vs quality factor")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
