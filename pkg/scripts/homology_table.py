"""Print integer homology of the oriented 3-plane Grassmannians for a range of N.

    python3 scripts/homology_table.py --nmin 3 --nmax 10 --json table.json
"""
import argparse
import json

from grassmann_mu.homology import betti_rational, class_of, homology_group
from grassmann_mu.schubert import s_cycle, top_dimension


def group_str(g):
    parts = ([f"Z^{g.free_rank}" if g.free_rank > 1 else "Z"] if g.free_rank else [])
    parts += [f"Z/{d}" for d in g.torsion]
    return " + ".join(parts) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmin", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--json", default=None, help="also write rows to this file")
    args = ap.parse_args()

    rows = []
    for N in range(args.nmin, args.nmax + 1):
        top = top_dimension(N)
        groups = [homology_group(N, q) for q in range(top + 1)]
        row = {
            "N": N,
            "groups": [g.to_json() for g in groups],
            "betti_rational": [betti_rational(N, q) for q in range(top + 1)],
        }
        if N >= 7:
            row["s_cycle_class"] = list(class_of(s_cycle(N), N).free)
        rows.append(row)
        cls = f"  [S_N] = {row['s_cycle_class']}" if "s_cycle_class" in row else ""
        print(f"N={N:2d}  " + "  ".join(f"H{g.degree}={group_str(g)}" for g in groups if g.free_rank or g.torsion) + cls)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
