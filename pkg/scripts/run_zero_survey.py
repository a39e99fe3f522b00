#!/usr/bin/env python3
"""Survey critical-line zeros of eta and the tail-geometry angle at each.

For every accepted ordinate t (residual |eta(1/2+it)| below tolerance, both
accelerated engines agreeing) the script reports the angle between the n = 2
term of the conjugated series and the vector of the remaining terms, and
whether it falls in [pi/2, 3*pi/2].

Example:
    python scripts/run_zero_survey.py --t 0:100 --workers 8 --output zeros.csv
"""

import argparse
import math
import sys
import time

from etafloor.reporting import ZeroRow, ZerosReport, serialize_report, write_report_bytes
from etafloor.scanner import survey_zeros, zero_geometry


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t", default="0:50")
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--output", default=None)
    args = parser.parse_args()

    t_lo, t_hi = (float(x) for x in args.t.split(":"))
    t0 = time.perf_counter()
    records = survey_zeros(t_lo, t_hi, args.tol, workers=args.workers)
    elapsed = time.perf_counter() - t0

    rows = []
    in_range = 0
    print(f"{'t':>14} {'residual':>10} {'engine gap':>11} {'angle/pi':>9} {'in range':>9}")
    for record in records:
        geometry = zero_geometry(record)
        rows.append(ZeroRow(record, geometry.angle, geometry.in_claimed_range))
        in_range += geometry.in_claimed_range
        print(f"{record.t:14.6f} {record.residual:10.2e} {record.engine_gap:11.2e} "
              f"{geometry.angle / math.pi:9.4f} {str(geometry.in_claimed_range):>9}")

    print(f"\n{len(records)} zeros in [{t_lo:g}, {t_hi:g}] ({elapsed:.1f}s); "
          f"{in_range}/{len(records)} angles inside [pi/2, 3pi/2]")

    if args.output:
        report = ZerosReport(t_range=(t_lo, t_hi), tol=args.tol, rows=tuple(rows))
        write_report_bytes(serialize_report(report, "csv"), args.output)
        print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
