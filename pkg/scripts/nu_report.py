"""Intersection of the rank-one frame variety with each cell of S_N, plus the sign ledger.

    python3 scripts/nu_report.py --n 7 --grid 21
"""
import argparse
import json

from grassmann_mu.frames import cells_meeting_nu, intersection_report, orientation_ledger
from grassmann_mu.schubert import s_cycle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--grid", type=int, default=21)
    args = ap.parse_args()

    for c, coeff in sorted(s_cycle(args.n).terms.items(), key=lambda kv: kv[0].sort_key()):
        rep = intersection_report(c, args.grid)
        print(f"{coeff:+d} {rep['cell']}: points={rep['points']} signs={rep['signs']} "
              f"min off-point sigma_2={rep['residual_min_off_point']:.3g}")
    print("4-cells meeting nu:", json.dumps(cells_meeting_nu(args.n)))
    print("ledger:", json.dumps(orientation_ledger().to_json()))


if __name__ == "__main__":
    main()
