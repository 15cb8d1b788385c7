#!/usr/bin/env python3
"""Weight-profile figure for the plain ensemble.

Reads ``ldgm-profile`` rows from a ``ldgm curve`` CSV (one distortion, one
degree) and plots the rate objective against the codeword weight fraction,
with the Shannon rate as a reference line and the bound value in the
legend.  Fails loudly if the profile does not hump above the reference or
does not match the bound row.

Usage: plot_u.py --csv curve.csv --out fig_u.png
"""

import argparse
import sys

from figspec import FigureSpec, as_float, load_rows, new_axes, save


def render(spec: FigureSpec) -> None:
    rows = load_rows(spec)
    profile = [r for r in rows if r["variant"] == "ldgm-profile"]
    if not profile:
        raise ValueError("no ldgm-profile rows; run curve with "
                         "--profile-distortion")
    d = profile[0]["D"]
    degree = profile[0]["c"]
    ws = [as_float(r, "w") for r in profile]
    us = [as_float(r, "R") for r in profile]
    if ws != sorted(ws):
        raise ValueError("profile weight grid is not sorted")

    shannon_rows = [r for r in rows if r["variant"] == "shannon"
                    and r["D"] == d]
    if not shannon_rows:
        raise ValueError(f"no shannon reference row at D={d}")
    reference = as_float(shannon_rows[0], "R")

    bound_rows = [r for r in rows if r["variant"] == "ldgm" and r["D"] == d]
    if not bound_rows:
        raise ValueError(f"no ldgm bound row at D={d}")
    bound = as_float(bound_rows[0], "R")

    # The profile must start at the reference, hump above it, and agree
    # with the bound row up to grid resolution.
    if abs(us[0] - reference) > 1e-9:
        raise ValueError(f"profile start {us[0]} != reference {reference}")
    if max(us) <= reference:
        raise ValueError("profile never exceeds the Shannon reference")
    if abs(max(us) - bound) > 1e-3:
        raise ValueError(f"profile max {max(us)} != bound value {bound}")

    fig, ax = new_axes(spec, "codeword weight fraction w",
                       "rate objective (bits)",
                       f"Plain ensemble objective, D={d}, c={degree}")
    ax.plot(ws, us, color="tab:blue",
            label=f"objective (max = {bound:.5f})")
    ax.axhline(reference, color="tab:red", linestyle="--",
               label=f"Shannon rate = {reference:.5f}")
    ax.legend(loc="lower left")
    save(fig, spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    render(FigureSpec(csv_path=args.csv, figure_id="fig-U",
                      out_path=args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
