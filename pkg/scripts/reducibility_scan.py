"""Scan pointwise reducibility of F^- along BPST and linear connection families.

Emits one JSON row per sample: {"params": ..., "sigma2": ..., "in_nu_p": ...}.

    python3 scripts/reducibility_scan.py --family bpst --steps 11 > bpst.jsonl
"""
import argparse
import json

import numpy as np

from grassmann_mu.gauge import ASD_BASIS, SD_BASIS, bpst_connection, linear_connection, reducibility


def bpst_rows(steps, radius):
    # distance from the instanton center at fixed scale, then scale at fixed point
    for t in np.linspace(0.0, 0.9 * radius, steps):
        A = bpst_connection(np.zeros(4), 1.0, radius)
        p = np.array([t, 0.0, 0.0, 0.0])
        yield {"family": "bpst", "lambda": 1.0, "point": p.tolist()}, reducibility(A, p)
    for lam in np.geomspace(0.1, 10.0, steps):
        A = bpst_connection(np.zeros(4), float(lam), radius)
        yield {"family": "bpst", "lambda": float(lam), "point": [0.0] * 4}, reducibility(A)


def linear_rows(steps, radius):
    # interpolate from a rank-one ASD curvature to the full -B and add a self-dual part
    for s in np.linspace(0.0, 1.0, steps):
        c = np.zeros((3, 4, 4))
        c[0] = 0.5 * ASD_BASIS[0]
        c[1] = 0.5 * s * ASD_BASIS[1]
        c[2] = 0.5 * SD_BASIS[2]
        yield {"family": "linear", "s": float(s)}, reducibility(linear_connection(c, radius=radius))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=["bpst", "linear", "all"], default="all")
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--radius", type=float, default=1.0)
    args = ap.parse_args()

    gens = []
    if args.family in ("bpst", "all"):
        gens.append(bpst_rows(args.steps, args.radius))
    if args.family in ("linear", "all"):
        gens.append(linear_rows(args.steps, args.radius))
    for gen in gens:
        for params, red in gen:
            row = {"params": params, "sigma2": float(red.curvature.sigma[1]), "in_nu_p": red.in_nu_p}
            print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
