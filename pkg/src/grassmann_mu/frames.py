"""Geometry of 3 x N frames.

Covers the Gram-Schmidt map onto orthonormal frames, the canonical
row-reduced form of each Schubert cell, the rank <= 1 variety nu_N (frames
whose first three columns have rank at most one), its intersections with the
4-cells, and the orientation bookkeeping that ties the intersection number to
p_1 through the complex Grassmannian.

Frames are plain ``numpy`` arrays of shape (3, N).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import (
    DegenerateFrameError,
    IllConditionedClassification,
    InvalidArgument,
    PreconditionViolation,
    TransversalityFailure,
)
from .schubert import CellIndex, enumerate_cells, s_cycle
from .tolerance import DEFAULT_TOLERANCE, RankTolerance

COORIENTATIONS = ("minor-lex", "minor-lex-reversed", "calibrated")


def as_frame(F, require_rank: bool = True, tol: RankTolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != 3 or F.shape[1] < 3:
        raise InvalidArgument(f"a frame is a 3 x N array with N >= 3, got shape {F.shape}")
    if require_rank:
        s = np.linalg.svd(F, compute_uv=False)
        if tol.rank(s) < 3:
            raise DegenerateFrameError(f"frame has numerical rank {tol.rank(s)} < 3 (singular values {s})")
    return F


def gram_schmidt(F, tol: RankTolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Orthonormalize the rows of F in order, keeping the oriented row span.

    Modified Gram-Schmidt with one reorthogonalization pass, which keeps the
    Gram matrix at identity to roundoff even for mildly ill-conditioned input.
    """
    F = as_frame(F, tol=tol)
    Q = np.empty_like(F)
    for r in range(3):
        v = F[r].copy()
        for _ in range(2):
            for s in range(r):
                v -= (Q[s] @ v) * Q[s]
        Q[r] = v / np.linalg.norm(v)
    return Q


@dataclass(frozen=True)
class CellPoint:
    """A point of an open cell: the cell and the free entries of its canonical matrix.

    Free coordinates are ordered x_1..x_{i-1}, y_1..y_{j-1} (skipping y_i),
    z_1..z_{k-1} (skipping z_i, z_j), which is also the cell's orientation order.
    For an e- cell the point is the negative of the canonical matrix built from
    the same free coordinates.
    """

    cell: CellIndex
    free_coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(x) for x in self.free_coords)
        object.__setattr__(self, "free_coords", coords)
        if len(coords) != self.cell.dim:
            raise InvalidArgument(
                f"{self.cell} has dimension {self.cell.dim}, got {len(coords)} free coordinates"
            )

    def to_json(self) -> dict:
        return {"cell": self.cell.label(), "free_coords": list(self.free_coords)}


@lru_cache(maxsize=None)
def free_positions(i: int, j: int, k: int) -> tuple[tuple[int, int], ...]:
    """(row, column) of each free entry, 0-based, in orientation order."""
    out = [(0, c - 1) for c in range(1, i)]
    out += [(1, c - 1) for c in range(1, j) if c != i]
    out += [(2, c - 1) for c in range(1, k) if c not in (i, j)]
    return tuple(out)


def embed_cell_point(p: CellPoint) -> np.ndarray:
    c = p.cell
    E = np.zeros((3, c.N))
    E[0, c.i - 1] = E[1, c.j - 1] = E[2, c.k - 1] = 1.0
    for (r, col), v in zip(free_positions(c.i, c.j, c.k), p.free_coords):
        E[r, col] = v
    return E if c.sign > 0 else -E


def _pivot_columns(F: np.ndarray, tol: RankTolerance) -> list[int]:
    # dim(P ∩ span(e_1..e_c)) = 3 - rank(F[:, c:]), so pivots are where the
    # rank of the trailing column block jumps while scanning right to left.
    N = F.shape[1]
    smax = float(np.linalg.svd(F, compute_uv=False)[0])
    pivots = []
    prev = 0
    for s in range(N - 1, -1, -1):
        sv = np.linalg.svd(F[:, s:], compute_uv=False)
        if tol.ambiguous(sv, smax):
            raise IllConditionedClassification(
                f"trailing block from column {s + 1} has a singular value in the ambiguity band: {sv}"
            )
        r = tol.rank(sv, smax)
        if r > prev:
            pivots.append(s)
            prev = r
        if prev == 3:
            break
    if len(pivots) != 3:
        raise DegenerateFrameError("frame does not have three pivots")
    return sorted(pivots)


def classify_cell(F, tol: RankTolerance = DEFAULT_TOLERANCE) -> CellPoint:
    """Locate the cell containing the oriented row span of F and its free coordinates."""
    F = as_frame(F, tol=tol)
    piv = _pivot_columns(F, tol)
    P = F[:, piv]
    E = np.linalg.solve(P, F)
    sign = 1 if np.linalg.det(P) > 0 else -1
    i, j, k = (p + 1 for p in piv)
    c = CellIndex(i, j, k, sign, F.shape[1])
    coords = tuple(E[r, col] for r, col in free_positions(i, j, k))
    return CellPoint(c, coords)


def nu_membership(F, tol: RankTolerance = DEFAULT_TOLERANCE) -> tuple[bool, float]:
    """Whether the first three columns of F have numerical rank <= 1; residual is sigma_2."""
    F = as_frame(F, require_rank=False)
    s = np.linalg.svd(F[:, :3], compute_uv=False)
    return bool(s[1] <= tol.threshold(s[0])), float(s[1])


# --- the rank <= 1 variety on a single cell -------------------------------

def _block_affine(c: CellIndex) -> tuple[np.ndarray, np.ndarray]:
    """First-three-columns block as B0 + sum_l u_l * B[l] over the cell's free coordinates."""
    zero = CellPoint(c, (0.0,) * c.dim)
    B0 = embed_cell_point(zero)[:, :3]
    Bl = np.zeros((c.dim, 3, 3))
    for l in range(c.dim):
        u = np.zeros(c.dim)
        u[l] = 1.0
        Bl[l] = embed_cell_point(CellPoint(c, tuple(u)))[:, :3] - B0
    return B0, Bl


def _blocks(c: CellIndex, U: np.ndarray) -> np.ndarray:
    B0, Bl = _block_affine(c)
    return B0 + np.einsum("nl,lrc->nrc", U, Bl)


def nu_forced_zero(c: CellIndex) -> tuple[int, ...] | None:
    """Exact description of nu on the open cell.

    Returns None when the cell misses nu, otherwise the indices of free
    coordinates that must vanish (nu ∩ cell is then the coordinate subspace
    where exactly those are zero).

    Every pivot column has a single nonzero entry, a 1 in its own row. With two
    or more pivots among the first three columns the block contains a 2x2
    identity minor, so its rank is at least 2. With one pivot at (r, col) every
    other row must be proportional to row r with factor equal to its entry in
    column col, which is 0, so those rows of the block must vanish.
    """
    pos = {p: n for n, p in enumerate(free_positions(c.i, c.j, c.k))}
    pivots = [(r, p - 1) for r, p in enumerate(c.triple) if p <= 3]
    if len(pivots) >= 2:
        return None
    if not pivots:
        raise NotImplementedError("no pivot inside the first three columns; nu is not affine here")
    r0, _ = pivots[0]
    forced = []
    for r in range(3):
        if r == r0:
            continue
        for col in range(3):
            if (r, col) in pos:
                forced.append(pos[(r, col)])
    return tuple(sorted(forced))


def nu_residual_grid(c: CellIndex, n: int = 21, radius: float = 2.0) -> tuple[np.ndarray, np.ndarray]:
    """sigma_2 of the block at every node of an n^dim grid over [-radius, radius]^dim."""
    axis = np.linspace(-radius, radius, n)
    U = np.array(list(product(axis, repeat=c.dim))) if c.dim else np.zeros((1, 0))
    s = np.linalg.svd(_blocks(c, U), compute_uv=False)
    return U, s[:, 1]


def _grid_crosscheck(c: CellIndex, forced, n: int, tol: RankTolerance) -> float:
    U, res = nu_residual_grid(c, n)
    if forced is None:
        on = np.zeros(len(U), dtype=bool)
    else:
        on = np.all(U[:, list(forced)] == 0.0, axis=1)
    if np.any(res[on] > tol.atol) or np.any(res[~on] <= tol.atol):
        raise RuntimeError(f"grid sampling disagrees with the exact analysis on {c}")
    return float(res[~on].min()) if np.any(~on) else float("inf")


def nu_intersect_cell(c: CellIndex, tol: RankTolerance = DEFAULT_TOLERANCE, check_grid: int = 5) -> list[CellPoint]:
    """All points of the open 4-cell ``c`` lying on nu, cross-checked on a coarse grid."""
    if c.dim != 4:
        raise InvalidArgument(f"nu_intersect_cell handles 4-cells only, {c} has dimension {c.dim}")
    forced = nu_forced_zero(c)
    if check_grid:
        _grid_crosscheck(c, forced, check_grid, tol)
    if forced is None:
        return []
    if len(forced) != c.dim:
        raise InvalidArgument(f"nu meets {c} in a positive-dimensional set")
    return [CellPoint(c, (0.0,) * c.dim)]


def sample_nu_cell(c: CellIndex, n: int = 9, radius: float = 2.0,
                   tol: RankTolerance = DEFAULT_TOLERANCE) -> tuple[list[CellPoint], bool]:
    """Grid nodes of any cell that fall on nu. The second value is always False: not exhaustive."""
    U, res = nu_residual_grid(c, n, radius)
    blocks = _blocks(c, U)
    smax = np.linalg.svd(blocks, compute_uv=False)[:, 0]
    hits = [CellPoint(c, tuple(u)) for u, r, s1 in zip(U, res, smax) if r <= tol.threshold(s1)]
    return hits, False


def intersection_report(c: CellIndex, n: int = 21, coorientation: str = "calibrated",
                        tol: RankTolerance = DEFAULT_TOLERANCE) -> dict:
    pts = nu_intersect_cell(c, tol)
    forced = nu_forced_zero(c)
    rmin = _grid_crosscheck(c, forced, n, tol)
    return {
        "cell": c.label(),
        "points": [list(p.free_coords) for p in pts],
        "signs": [intersection_sign_real(c, p, coorientation, tol) for p in pts],
        "residual_min_off_point": rmin,
    }


# --- intersection signs ---------------------------------------------------

def _minor_defining(M: np.ndarray, pivot: tuple[int, int]) -> np.ndarray:
    """The four 2x2 minors through the pivot entry; near a rank-1 block they cut out rank <= 1."""
    r0, c0 = pivot
    rows = [r for r in range(3) if r != r0]
    cols = [c for c in range(3) if c != c0]
    return np.array([M[r0, c0] * M[s, t] - M[s, c0] * M[r0, t] for s in rows for t in cols])


def _jacobian(fn, u0: np.ndarray, h: float = 0.5) -> np.ndarray:
    # fn is quadratic in u, so the central difference is exact up to roundoff.
    cols = []
    for l in range(len(u0)):
        e = np.zeros(len(u0))
        e[l] = h
        cols.append((fn(u0 + e) - fn(u0 - e)) / (2 * h))
    return np.array(cols).T


def _coorientation_factor(convention: str) -> int:
    if convention == "minor-lex":
        return 1
    if convention == "minor-lex-reversed":
        return -1
    if convention == "calibrated":
        return calibrated_coorientation()
    raise InvalidArgument(f"unknown co-orientation {convention!r}; expected one of {COORIENTATIONS}")


def intersection_sign_real(c: CellIndex, point: CellPoint, coorientation: str = "minor-lex",
                           tol: RankTolerance = DEFAULT_TOLERANCE) -> int:
    """Local intersection sign of the oriented cell with nu at ``point``.

    nu is co-oriented by the four minors through the largest entry of the
    block (rows then columns in increasing order, the "minor-lex" rule). The
    sign is that of the Jacobian determinant of those minors with respect to
    the cell's ordered free coordinates.
    """
    factor = _coorientation_factor(coorientation)
    if point.cell != c:
        raise InvalidArgument(f"point lies on {point.cell}, not {c}")
    u0 = np.array(point.free_coords)
    M0 = embed_cell_point(point)[:, :3]
    s = np.linalg.svd(M0, compute_uv=False)
    if s[1] > tol.threshold(s[0]) or s[0] <= tol.atol:
        raise PreconditionViolation("point is not a rank-1 point of nu")
    if c.dim != 4:
        raise InvalidArgument("transverse intersection with a codimension-4 set needs a 4-cell")
    pivot = np.unravel_index(int(np.argmax(np.abs(M0))), M0.shape)

    def fn(u):
        return _minor_defining(embed_cell_point(CellPoint(c, tuple(u)))[:, :3], pivot)

    det = np.linalg.det(_jacobian(fn, u0))
    if abs(det) < 1e-9:
        raise TransversalityFailure(f"Jacobian determinant {det:.3e} at {point}")
    return factor * (1 if det > 0 else -1)


def signed_intersection_with_s_cycle(N: int = 7, coorientation: str = "calibrated",
                                     tol: RankTolerance = DEFAULT_TOLERANCE) -> int:
    total = 0
    for c, coeff in s_cycle(N).terms.items():
        for p in nu_intersect_cell(c, tol):
            total += coeff * intersection_sign_real(c, p, coorientation, tol)
    return total


def y_membership_complex(F, tol: float = 1e-10) -> bool:
    """Whether (x1+ix4, y1+iy4, z1+iz4) and (x2+ix3, y2+iy3, z2+iz3) are complex colinear."""
    F = as_frame(F, require_rank=False)
    if F.shape[1] < 4:
        raise InvalidArgument("complex colinearity test needs N >= 4")
    v1, v2 = _complex_pair(F)
    return bool(np.linalg.norm(np.cross(v1, v2)) <= tol)


def _complex_pair(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return F[:, 0] + 1j * F[:, 3], F[:, 1] + 1j * F[:, 2]


def _complex_defining(F: np.ndarray, anchor: int, t0: int) -> np.ndarray:
    pair = _complex_pair(F)
    a, b = pair[anchor], pair[1 - anchor]
    g = [a[t0] * b[t] - b[t0] * a[t] for t in range(3) if t != t0]
    return np.array([g[0].real, g[0].imag, g[1].real, g[1].imag])


def intersection_sign_complex(source_orientation: int = 1, reparam=None,
                              cell: CellIndex | None = None) -> int:
    """Intersection sign of e+(1,4,5) with the c_2 cycle Y at y2 = y3 = z2 = z3 = 0.

    Y is cut out by the two holomorphic minors expressing colinearity, so its
    normal space carries the complex orientation (Re g1, Im g1, Re g2, Im g2).
    ``reparam`` (a 4x4 matrix) pre-composes the cell chart linearly.
    """
    c = cell or CellIndex(1, 4, 5, 1, 5)
    if c.dim != 4:
        raise InvalidArgument("the complex intersection is computed on a 4-cell")
    u0 = np.zeros(4)
    F0 = embed_cell_point(CellPoint(c, tuple(u0)))
    if not y_membership_complex(F0):
        raise InvalidArgument(f"the base point of {c} is not on Y")
    v1, v2 = _complex_pair(F0)
    anchor = 0 if np.linalg.norm(v1) >= np.linalg.norm(v2) else 1
    t0 = int(np.argmax(np.abs((v1, v2)[anchor])))
    R = np.eye(4) if reparam is None else np.asarray(reparam, dtype=float)

    def fn(w):
        return _complex_defining(embed_cell_point(CellPoint(c, tuple(u0 + R @ w))), anchor, t0)

    det = np.linalg.det(_jacobian(fn, np.zeros(4)))
    if abs(det) < 1e-12:
        raise RuntimeError("degenerate Jacobian in the complex intersection computation")
    return source_orientation * (1 if det > 0 else -1)


@dataclass(frozen=True)
class OrientationLedger:
    complex_sign: int
    p1_vs_c2: int = -1
    nu_dot_S: int = -1
    mu_coefficient: Fraction = Fraction(-1, 4)

    def __post_init__(self):
        if self.nu_dot_S != self.complex_sign * self.p1_vs_c2:
            raise ValueError("ledger invariant nu_dot_S = complex_sign * p1_vs_c2 violated")
        if self.mu_coefficient != Fraction(-1, 4):
            raise ValueError("mu coefficient must be exactly -1/4")

    def to_json(self) -> dict:
        return {
            "complex_sign": self.complex_sign,
            "p1_vs_c2": self.p1_vs_c2,
            "nu_dot_S": self.nu_dot_S,
            "mu_coefficient": str(self.mu_coefficient),
        }


def orientation_ledger() -> OrientationLedger:
    cs = intersection_sign_complex()
    # p_1 = -i^* c_2
    p1_vs_c2 = -1
    return OrientationLedger(cs, p1_vs_c2, cs * p1_vs_c2, Fraction(-1, 4))


@lru_cache(maxsize=None)
def calibrated_coorientation() -> int:
    """Factor (+-1) relative to "minor-lex" that makes nu meet S_N with total -1 (the p_1 orientation)."""
    target = orientation_ledger().nu_dot_S
    raw = signed_intersection_with_s_cycle(7, "minor-lex")
    if abs(raw) != 1:
        raise RuntimeError(f"nu meets S_7 with total {raw}, expected +-1")
    return target * raw


# --- ingestion ------------------------------------------------------------

def parse_frame_text(text: str) -> np.ndarray:
    rows = [[float(t) for t in ln.split()] for ln in text.splitlines() if ln.strip()]
    if len(rows) != 3 or len({len(r) for r in rows}) != 1:
        raise InvalidArgument("a frame file has 3 rows of equal length")
    return np.array(rows)


def frame_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("frame")
    return as_frame(np.array(data, dtype=float), require_rank=False)


def cells_meeting_nu(N: int) -> dict[str, int]:
    """Point counts of nu on every 4-cell of G_N."""
    return {c.label(): len(nu_intersect_cell(c)) for c in enumerate_cells(N, 4)}
