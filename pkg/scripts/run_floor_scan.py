#!/usr/bin/env python3
"""Scan a slab of the strip against the candidate floor |1 - sqrt(2)/2^alpha|.

Writes one CSV with every sample and prints a per-line summary of margins and
violations.  The floor is a hypothesis under test here: violating samples are
findings, not errors.

Example:
    python scripts/run_floor_scan.py --alpha 0.55:0.95 --alpha-step 0.05 \
        --beta 0:200 --step 0.01 --workers 8 --output floor_scan.csv
"""

import argparse
import sys
import time

from etafloor.reporting import serialize_report, write_report_bytes
from etafloor.scanner import scan_grid


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alpha", default="0.55:0.95")
    parser.add_argument("--alpha-step", type=float, default=0.05)
    parser.add_argument("--beta", default="0:200")
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--output", default="floor_scan.csv")
    args = parser.parse_args()

    a_lo, a_hi = (float(x) for x in args.alpha.split(":"))
    b_lo, b_hi = (float(x) for x in args.beta.split(":"))

    t0 = time.perf_counter()
    grid = scan_grid(
        (a_lo, a_hi), (b_lo, b_hi), args.alpha_step, args.step, args.tol,
        workers=args.workers,
    )
    elapsed = time.perf_counter() - t0

    print(f"{'alpha':>7} {'min |eta|':>12} {'argmin beta':>12} "
          f"{'floor':>10} {'worst margin':>13} {'violations':>11}")
    for line in grid.lines:
        worst = min(s.margin for s in line.samples)
        floor = line.samples[0].floor_value
        print(f"{line.alpha:7.3f} {line.min_eta_abs:12.6f} {line.argmin_beta:12.4f} "
              f"{floor:10.6f} {worst:13.6f} {len(line.violations):11d}")

    total_violations = grid.violation_count
    n_samples = sum(len(ln.samples) for ln in grid.lines)
    print(f"\n{n_samples} samples in {elapsed:.1f}s; "
          f"global min |eta| = {grid.min_eta_abs:.6f} at "
          f"alpha={grid.argmin_alpha:g}, beta={grid.argmin_beta:.4f}; "
          f"{total_violations} floor violations")
    if total_violations:
        print("the candidate floor FAILS on this slab; see the violation rows")

    write_report_bytes(serialize_report(grid, "csv"), args.output)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
