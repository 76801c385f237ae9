#!/usr/bin/env python3
"""Run the default pulse-error sweep and print the scaling table and fits.

Writes the sweep CSV and the two power-law fits next to each other so a run
is fully reproducible from its artifacts: same seed, same grid, same numbers.
"""
from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from spinlogic import noise


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-runs", type=int, default=noise.DEFAULT_N_RUNS)
    parser.add_argument("--seed", type=int, default=noise.DEFAULT_SEED)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    points = noise.sweep(n_runs=args.n_runs, seed=args.seed)
    noise.write_csv(points, out_dir / "error_sweep.csv")

    print(f"{'epsilon':>12} {'mean_P':>13} {'stderr_P':>10} {'mean_Q':>13} {'stderr_Q':>10} {'excl':>5}")
    for p in points:
        print(f"{p.epsilon:12.6g} {p.mean_p:13.6g} {p.stderr_p:10.3g} "
              f"{p.mean_q:13.6g} {p.stderr_q:10.3g} {p.excluded_trials:5d}")

    fit_lines = []
    for channel in ("P", "Q"):
        fit = noise.fit_power_law(points, channel)
        print(f"channel {channel}: error = {fit.amplitude:.6g} * eps^{fit.exponent:.6g}  (chi2 {fit.chi2:.4g})")
        fit_lines.append(fit.json())
    (out_dir / "error_fits.json").write_text("[\n  " + ",\n  ".join(fit_lines) + "\n]\n")
    print(f"artifacts in {out_dir}/: error_sweep.csv, error_fits.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
