#!/usr/bin/env python3
"""Rate-distortion bound curves for several check degrees.

Reads ``shannon`` and ``ldgm`` rows from a ``ldgm curve`` CSV and plots
rate against distortion.  The Shannon curve must be the lowest everywhere
and smaller degrees must give looser (higher) curves.

Usage: plot_rd.py --csv curve.csv --out fig_rd.png
"""

import argparse
import sys

from figspec import FigureSpec, as_float, load_rows, new_axes, save


def render(spec: FigureSpec) -> None:
    rows = load_rows(spec)
    shannon = {r["D"]: as_float(r, "R") for r in rows
               if r["variant"] == "shannon"}
    if not shannon:
        raise ValueError("no shannon rows")
    curves = {}
    for r in rows:
        if r["variant"] == "ldgm":
            curves.setdefault(int(r["c"]), {})[r["D"]] = as_float(r, "R")
    if not curves:
        raise ValueError("no ldgm bound rows")

    distortions = sorted(shannon, key=float)
    if [float(d) for d in distortions] != sorted(float(d) for d in shannon):
        raise ValueError("distortion axis is not monotone")
    for c, curve in curves.items():
        for d, rate in curve.items():
            if rate < shannon[d]:
                raise ValueError(f"c={c} curve dips below Shannon at D={d}")
    degrees = sorted(curves)
    for small, large in zip(degrees, degrees[1:]):
        for d in distortions:
            if d in curves[small] and d in curves[large]:
                if curves[small][d] < curves[large][d] - 1e-9:
                    raise ValueError(
                        f"degree ordering violated at D={d}: "
                        f"c={small} below c={large}")

    fig, ax = new_axes(spec, "distortion D", "rate (bits)",
                       "Rate bounds vs the Shannon curve")
    xs = [float(d) for d in distortions]
    ax.plot(xs, [shannon[d] for d in distortions], color="black",
            linewidth=2, label="Shannon 1 - h(D)")
    for c in degrees:
        pts = [(float(d), curves[c][d]) for d in distortions if d in curves[c]]
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                label=f"c = {c}")
    ax.legend(loc="upper right")
    save(fig, spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    render(FigureSpec(csv_path=args.csv, figure_id="fig-RD",
                      out_path=args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
