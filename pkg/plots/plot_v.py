#!/usr/bin/env python3
"""Weight-profile figure for the compound (precoded) construction.

Reads ``compound-profile`` rows from a ``ldgm curve`` CSV and plots the
compound rate objective against the codeword weight fraction, with the
precode design rate as a horizontal line.  Fails loudly if any plotted
point exceeds that line (the saturation property this figure exists to
show).

Usage: plot_v.py --csv curve.csv --out fig_v.png
"""

import argparse
import sys

from figspec import FigureSpec, as_float, load_rows, new_axes, save


def render(spec: FigureSpec) -> None:
    rows = load_rows(spec)
    profile = [r for r in rows if r["variant"] == "compound-profile"]
    if not profile:
        raise ValueError("no compound-profile rows; run curve with --dv/--dc "
                         "and --profile-distortion")
    d = profile[0]["D"]
    degree = profile[0]["c"]
    d_v, d_c = int(profile[0]["dv"]), int(profile[0]["dc"])
    rate_h = 1.0 - d_v / d_c
    ws = [as_float(r, "w") for r in profile]
    vs = [as_float(r, "R") for r in profile]
    if ws != sorted(ws):
        raise ValueError("profile weight grid is not sorted")

    shannon_rows = [r for r in rows if r["variant"] == "shannon"
                    and r["D"] == d]
    if not shannon_rows:
        raise ValueError(f"no shannon reference row at D={d}")
    reference = as_float(shannon_rows[0], "R")

    # The whole plotted curve must stay below the precode rate line; its
    # left endpoint approaches the Shannon rate from below.
    worst = max(vs)
    if worst > rate_h + 1e-6:
        raise ValueError(f"profile exceeds the rate line: max {worst} > "
                         f"{rate_h}")
    if abs(vs[0] - reference) > 0.01:
        raise ValueError(f"left endpoint {vs[0]} is not near the Shannon "
                         f"rate {reference}")

    fig, ax = new_axes(spec, "codeword weight fraction w",
                       "compound rate objective (bits)",
                       f"Compound objective, D={d}, c={degree}, "
                       f"({d_v},{d_c}) precode")
    ax.plot(ws, vs, color="tab:blue",
            label=f"objective (max = {worst:.5f})")
    ax.axhline(rate_h, color="tab:red", linestyle="--",
               label=f"precode rate = {rate_h:.2f}")
    ax.legend(loc="lower left")
    save(fig, spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    render(FigureSpec(csv_path=args.csv, figure_id="fig-V",
                      out_path=args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
