"""Command-line front end. Every command emits one JSON report.

With ``--out`` the report goes to that file and a short summary is printed;
without it the JSON itself is printed. Exit status is 0 iff every internal
certificate in the report passed, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import __version__
from .errors import DescriptorError, InvalidArgument, ResourceLimit
from .frames import intersection_report, intersection_sign_complex, orientation_ledger, signed_intersection_with_s_cycle
from .gauge import load_descriptor, radial_gauge_residual, reducibility
from .homology import (
    class_of,
    dd_certificate,
    euler_consistency,
    homology_group,
    is_cycle,
    snf_certificate,
)
from .schubert import Chain, boundary, enumerate_cells, export_boundary_matrices, s_cycle, top_dimension
from .tolerance import RankTolerance

DEFAULT_CAP = 12


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    qmax: int = 6
    atol: float = 1e-12
    rtol: float = 1e-9
    h: Optional[float] = None
    seed: int = 0
    out: Optional[str] = None
    connection: Optional[str] = None
    point: Optional[list] = None
    grid: int = 21
    cap: int = DEFAULT_CAP

    @property
    def tolerance(self) -> RankTolerance:
        return RankTolerance(self.atol, self.rtol)


def _cap() -> int:
    raw = os.environ.get("GRASSMANN_MU_CAP")
    return int(raw) if raw else DEFAULT_CAP


def _require_n(cfg: RunConfig, minimum: int) -> int:
    if cfg.n is None:
        raise InvalidArgument("--n is required")
    if cfg.n < minimum:
        raise InvalidArgument(f"--n must be at least {minimum} for '{cfg.command}', got {cfg.n}")
    if cfg.n > cfg.cap:
        raise ResourceLimit(f"N={cfg.n} exceeds the cap {cfg.cap} (raise it with GRASSMANN_MU_CAP)")
    return cfg.n


def cmd_homology(cfg: RunConfig) -> tuple[dict, dict]:
    N = _require_n(cfg, 3)
    qmax = min(cfg.qmax, top_dimension(N))
    if qmax < 0:
        raise InvalidArgument("--qmax must be non-negative")
    degrees = list(range(qmax + 1))
    with ThreadPoolExecutor() as pool:
        groups = list(pool.map(lambda q: homology_group(N, q), degrees))
        snf_ok = all(pool.map(lambda q: snf_certificate(N, q), range(1, qmax + 2)))
    euler = euler_consistency(N)
    result = {
        "N": N,
        "qmax": qmax,
        "groups": [g.to_json() for g in groups],
        "cells_per_degree": [len(enumerate_cells(N, q)) for q in degrees],
        "euler": euler.to_json(),
    }
    certs = {"dd_zero": dd_certificate(N), "snf_remultiplication": snf_ok, "euler_consistency": euler.consistent}
    return result, certs


def cmd_generator(cfg: RunConfig) -> tuple[dict, dict]:
    N = _require_n(cfg, 7)
    S = s_cycle(N)
    cyc = is_cycle(S)
    cls = class_of(S, N)
    # linearity spot check: a*S + d(b*cell) has class a*[S]
    rng = random.Random(cfg.seed)
    a = rng.choice([x for x in range(-5, 6) if x])
    fives = enumerate_cells(N, 5)
    shifted = a * S + rng.randint(-3, 3) * boundary(rng.choice(fives))
    lin = class_of(shifted, N).free == tuple(a * x for x in cls.free)
    result = {
        "N": N,
        "chain": {c.label(): v for c, v in S.terms.items()},
        "is_cycle": cyc,
        "class_coordinates": list(cls.free),
        "class_coordinate": cls.free[0] if len(cls.free) == 1 else None,
        "h4": homology_group(N, 4).to_json(),
        "spans_free_summand": cls.spans_free_summand,
        "generates_h4": cls.is_generator,
    }
    certs = {
        "is_cycle": cyc,
        "dd_zero": dd_certificate(N),
        "snf_remultiplication": snf_certificate(N, 4) and snf_certificate(N, 5),
        "linearity": lin,
    }
    return result, certs


def cmd_nu(cfg: RunConfig) -> tuple[dict, dict]:
    N = _require_n(cfg, 7)
    tol = cfg.tolerance
    cells = {}
    for c in s_cycle(N).terms:
        cells[c.label()] = intersection_report(c, cfg.grid, "calibrated", tol)
    ledger = orientation_ledger()
    total = signed_intersection_with_s_cycle(N, "calibrated", tol)
    result = {
        "N": N,
        "cells": cells,
        "complex_sign": intersection_sign_complex(),
        "ledger": ledger.to_json(),
        "nu_dot_S": ledger.nu_dot_S,
        "signed_intersection_with_S": total,
    }
    certs = {
        "ledger_invariant": ledger.complex_sign * ledger.p1_vs_c2 == ledger.nu_dot_S,
        "signed_total_matches_ledger": total == ledger.nu_dot_S,
        "grid_residual_positive": all(r["residual_min_off_point"] > 0 for r in cells.values()),
    }
    return result, certs


def cmd_curvature(cfg: RunConfig) -> tuple[dict, dict]:
    if not cfg.connection:
        raise InvalidArgument("--connection is required")
    A = load_descriptor(cfg.connection)
    p = A.base if cfg.point is None else np.array(cfg.point, dtype=float)
    red = reducibility(A, p, cfg.tolerance, h=cfg.h)
    cm = red.curvature
    result = {
        "kind": A.kind,
        "point": [float(x) for x in p],
        "M": [[float(x) for x in row] for row in cm.M],
        "sigma": [float(x) for x in cm.sigma],
        "in_nu_p": red.in_nu_p,
        "f_plus_norm": cm.f_plus_norm,
        "radial_residual": radial_gauge_residual(A, samples=256, seed=cfg.seed),
    }
    certs = {"finite": bool(np.all(np.isfinite(cm.M)))}
    return result, certs


def cmd_export(cfg: RunConfig) -> tuple[dict, dict]:
    N = _require_n(cfg, 3)
    if not cfg.out:
        raise InvalidArgument("export needs --out <directory>")
    paths = export_boundary_matrices(N, cfg.out)
    return {"N": N, "files": [os.path.basename(p) for p in paths]}, {"dd_zero": dd_certificate(N)}


COMMANDS = {
    "homology": cmd_homology,
    "generator": cmd_generator,
    "nu": cmd_nu,
    "curvature": cmd_curvature,
    "export": cmd_export,
}


def build_report(cfg: RunConfig) -> dict:
    result, certs = COMMANDS[cfg.command](cfg)
    return {
        "toolkit": "grassmann_mu",
        "version": __version__,
        "config": asdict(cfg),
        "result": result,
        "certificates": certs,
        "ok": all(certs.values()),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _point(text: str) -> list:
    vals = [float(t) for t in text.split(",")]
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("--point takes four comma-separated numbers")
    return vals


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grassmann-mu", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--qmax", type=int, default=6)
    common.add_argument("--atol", type=float, default=1e-12)
    common.add_argument("--rtol", type=float, default=1e-9)
    common.add_argument("--h", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--connection", default=None, help="JSON connection descriptor")
    common.add_argument("--point", type=_point, default=None, help="x1,x2,x3,x4")
    common.add_argument("--grid", type=int, default=21, help="grid nodes per axis for nu residual scans")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("homology", parents=[common], help="integer homology of G_N")
    sub.add_parser("generator", parents=[common], help="class of S_N in H_4")
    sub.add_parser("nu", parents=[common], help="intersection of nu_N with S_N and the orientation ledger")
    sub.add_parser("curvature", parents=[common], help="reducibility of F-(p) for a connection")
    sub.add_parser("export", parents=[common], help="write boundary matrices as plain text")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command, n=args.n, qmax=args.qmax, atol=args.atol, rtol=args.rtol,
        h=args.h, seed=args.seed, out=args.out, connection=args.connection,
        point=args.point, grid=args.grid, cap=_cap(),
    )
    try:
        report = build_report(cfg)
    except (InvalidArgument, ResourceLimit, DescriptorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report)
    if cfg.out and cfg.command != "export":
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(_summary(report))
    else:
        sys.stdout.write(text)
    return 0 if report["ok"] else 1


def _summary(report: dict) -> str:
    res = report["result"]
    status = "ok" if report["ok"] else "FAILED CERTIFICATES"
    cmd = report["config"]["command"]
    if cmd == "homology":
        body = ", ".join(
            f"H_{g['q']} = " + _group_str(g["free_rank"], g["torsion"]) for g in res["groups"]
        )
    elif cmd == "generator":
        body = f"S_{res['N']} cycle={res['is_cycle']} coordinates={res['class_coordinates']}"
    elif cmd == "nu":
        body = f"nu . S_{res['N']} = {res['signed_intersection_with_S']}, complex sign {res['complex_sign']}"
    else:
        body = f"in_nu_p={res['in_nu_p']} sigma={res['sigma']}"
    return f"[{cmd}] {body} ({status})"


def _group_str(rank: int, torsion: list) -> str:
    parts = (["Z^%d" % rank if rank > 1 else "Z"] if rank else []) + [f"Z/{d}" for d in torsion]
    return " + ".join(parts) if parts else "0"
