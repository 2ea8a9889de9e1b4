"""Connections on a ball in R^4 with values in (R^3, cross product), curvature at a point,
anti-self-dual projection, and the pointwise reducibility test.

Index conventions: a connection evaluates to an array ``A[mu, a]`` of shape
(4, 3); the derivative array is ``dA[mu, nu, a] = d_mu A^a_nu``; curvature is
``F[a, mu, nu]`` of shape (3, 4, 4). The metric is flat Euclidean and R^4 is
oriented by dx1^dx2^dx3^dx4.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Optional

import numpy as np

from .errors import DescriptorError, InconsistentLimit, InvalidArgument, StencilOutOfDomain
from .tolerance import DEFAULT_TOLERANCE, RankTolerance


def _two_form(*pairs) -> np.ndarray:
    w = np.zeros((4, 4))
    for s, mu, nu in pairs:
        w[mu, nu] += s
        w[nu, mu] -= s
    return w


# Anti-self-dual basis: dx1^dx2 - dx3^dx4, dx1^dx3 - dx4^dx2, dx1^dx4 - dx2^dx3.
ASD_BASIS = np.array([
    _two_form((1, 0, 1), (-1, 2, 3)),
    _two_form((1, 0, 2), (-1, 3, 1)),
    _two_form((1, 0, 3), (-1, 1, 2)),
])
SD_BASIS = np.array([
    _two_form((1, 0, 1), (1, 2, 3)),
    _two_form((1, 0, 2), (1, 3, 1)),
    _two_form((1, 0, 3), (1, 1, 2)),
])


def _levi_civita4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in permutations(range(4)):
        inv = sum(1 for x in range(4) for y in range(x + 1, 4) if perm[x] > perm[y])
        eps[perm] = -1.0 if inv % 2 else 1.0
    return eps


EPS4 = _levi_civita4()


def hodge_star(F: np.ndarray) -> np.ndarray:
    """(*F)_{mu nu} = 1/2 eps_{mu nu rho sigma} F_{rho sigma}, acting on the trailing two indices."""
    return 0.5 * np.einsum("mnrs,...rs->...mn", EPS4, F)


@dataclass
class ConnectionSpec:
    """A connection on the closed ball of ``radius`` about ``base``.

    ``evaluator(x)`` returns A[mu, a]; ``analytic_jacobian(x)``, when given,
    returns d_mu A^a_nu as an array indexed [mu, nu, a]. Evaluators must be
    stateless so they can be called from several threads.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    analytic_jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    base: np.ndarray = field(default_factory=lambda: np.zeros(4))
    radius: float = 1.0

    def __post_init__(self):
        self.base = np.asarray(self.base, dtype=float).reshape(4)
        if self.radius <= 0:
            raise InvalidArgument("ball radius must be positive")

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float).reshape(4, 3)

    def gauge_rotated(self, R: np.ndarray) -> ConnectionSpec:
        """Constant gauge transformation by R in SO(3) acting on the Lie index."""
        R = np.asarray(R, dtype=float)
        ev = self.evaluator
        jac = self.analytic_jacobian
        return ConnectionSpec(
            lambda x: np.asarray(ev(x)).reshape(4, 3) @ R.T,
            None if jac is None else (lambda x: np.asarray(jac(x)) @ R.T),
            self.kind,
            dict(self.params),
            self.base,
            self.radius,
        )


def flat_connection(base=None, radius: float = 1.0) -> ConnectionSpec:
    return ConnectionSpec(
        lambda x: np.zeros((4, 3)),
        lambda x: np.zeros((4, 4, 3)),
        "flat",
        {},
        np.zeros(4) if base is None else base,
        radius,
    )


def linear_connection(c, base=None, radius: float = 1.0) -> ConnectionSpec:
    """A^a_nu(x) = c^a_{nu mu} (x - base)^mu with c[a, mu, nu] antisymmetric in (mu, nu)."""
    c = np.asarray(c, dtype=float)
    if c.shape != (3, 4, 4):
        raise InvalidArgument(f"c must have shape (3, 4, 4), got {c.shape}")
    if not np.allclose(c, -np.transpose(c, (0, 2, 1)), atol=0.0, rtol=0.0):
        raise InvalidArgument("c must be antisymmetric in its two spacetime indices (radial gauge)")
    b = np.zeros(4) if base is None else np.asarray(base, dtype=float)
    jac = np.transpose(c, (2, 1, 0)).copy()  # jac[mu, nu, a] = c[a, nu, mu]

    def evaluator(x):
        return np.einsum("anm,m->na", c, x - b)

    return ConnectionSpec(evaluator, lambda x: jac, "linear", {"c": c}, b, radius)


def bpst_connection(center, lam: float, radius: float = 1.0) -> ConnectionSpec:
    """A^a_mu = 2 eta^a_{mu nu} (x - center)^nu / (|x - center|^2 + lam^2) with eta^a = -B_a.

    The minus sign pairs the ASD basis with the cross-product bracket: the
    matrices B_a satisfy [B_a, B_b] = 2 eps_abc B_c, and with eta = +B the
    curvature is anti-self-dual only at the center. With eta = -B it is
    anti-self-dual everywhere, F^a = 4 lam^2 B_a / (|x - center|^2 + lam^2)^2.
    """
    if lam <= 0:
        raise InvalidArgument("instanton scale must be positive")
    ctr = np.asarray(center, dtype=float).reshape(4)
    eta = -ASD_BASIS

    def evaluator(x):
        y = x - ctr
        return 2.0 * np.einsum("amn,n->ma", eta, y) / (y @ y + lam**2)

    def jacobian(x):
        y = x - ctr
        D = y @ y + lam**2
        # d_mu A^a_nu = 2 eta^a_{nu mu} / D - 4 eta^a_{nu rho} y^rho y_mu / D^2
        first = 2.0 * np.transpose(eta, (2, 1, 0)) / D
        ey = np.einsum("anr,r->na", eta, y)
        second = -4.0 * np.einsum("m,na->mna", y, ey) / D**2
        return first + second

    return ConnectionSpec(evaluator, jacobian, "bpst", {"center": ctr, "lambda": float(lam)}, ctr, radius)


def sample_ball(base, radius: float, samples: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    d = rng.normal(size=(samples, 4))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = radius * rng.random(samples) ** 0.25
    return np.asarray(base) + d * r[:, None]


def radial_gauge_residual(A: ConnectionSpec, base=None, samples: int = 256, seed: int = 0) -> float:
    """max over sampled x in the ball of |sum_mu (x - base)^mu A^a_mu(x)|."""
    if samples < 1:
        raise InvalidArgument("need at least one sample")
    base = A.base if base is None else np.asarray(base, dtype=float)
    worst = 0.0
    for x in sample_ball(base, A.radius, samples, seed):
        worst = max(worst, float(np.max(np.abs((x - base) @ A(x)))))
    return worst


_STENCILS = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
}


def derivative_fd(A: ConnectionSpec, p, h: float, order: int = 4) -> np.ndarray:
    """Central-difference d_mu A^a_nu at p, indexed [mu, nu, a]."""
    if order not in _STENCILS:
        raise InvalidArgument(f"stencil order must be 2 or 4, got {order}")
    p = np.asarray(p, dtype=float)
    reach = max(abs(o) for o, _ in _STENCILS[order]) * h
    if np.linalg.norm(p - A.base) + reach > A.radius * (1 + 1e-12):
        raise StencilOutOfDomain(
            f"stencil of reach {reach:g} at distance {np.linalg.norm(p - A.base):g} leaves the ball of radius {A.radius:g}"
        )
    out = np.zeros((4, 4, 3))
    for mu in range(4):
        e = np.zeros(4)
        e[mu] = h
        out[mu] = sum(w * A(p + o * e) for o, w in _STENCILS[order]) / h
    return out


def curvature_at(A: ConnectionSpec, p=None, h: float | None = None, order: int = 4,
                 use_analytic: bool = True) -> np.ndarray:
    """F^a_{mu nu} = d_mu A^a_nu - d_nu A^a_mu + (A_mu x A_nu)^a, shape (3, 4, 4)."""
    p = A.base if p is None else np.asarray(p, dtype=float)
    if h is not None and h <= 0:
        raise InvalidArgument("step must be positive")
    if np.linalg.norm(p - A.base) > A.radius:
        raise StencilOutOfDomain("evaluation point lies outside the ball")
    if use_analytic and A.analytic_jacobian is not None:
        dA = np.asarray(A.analytic_jacobian(p), dtype=float)
    else:
        dA = derivative_fd(A, p, 1e-3 * A.radius if h is None else h, order)
    a = A(p)
    comm = np.cross(a[:, None, :], a[None, :, :])  # [mu, nu, a]
    F = dA - np.transpose(dA, (1, 0, 2)) + comm
    F = np.transpose(F, (2, 0, 1))
    return 0.5 * (F - np.transpose(F, (0, 2, 1)))


@dataclass(frozen=True)
class CurvatureMatrix:
    """Rows: Lie-algebra index a. Columns: ASD basis index b."""

    M: np.ndarray
    sigma: np.ndarray
    f_plus_norm: float

    def is_reducible(self, tol: RankTolerance = DEFAULT_TOLERANCE) -> bool:
        return bool(self.sigma[1] <= tol.threshold(self.sigma[0]))


def asd_project(F) -> CurvatureMatrix:
    """M_ab = 1/4 sum_{mu nu} F-^a_{mu nu} (B_b)_{mu nu} with F- = (F - *F)/2.

    ``f_plus_norm`` is the Frobenius norm of F+ = (F + *F)/2 over all components.
    """
    F = np.asarray(F, dtype=float)
    star = hodge_star(F)
    fminus = 0.5 * (F - star)
    fplus = 0.5 * (F + star)
    M = 0.25 * np.einsum("amn,bmn->ab", fminus, ASD_BASIS)
    return CurvatureMatrix(M, np.linalg.svd(M, compute_uv=False), float(np.linalg.norm(fplus)))


@dataclass(frozen=True)
class Reducibility:
    in_nu_p: bool
    residual: float
    curvature: CurvatureMatrix


def reducibility(A: ConnectionSpec, p=None, tol: RankTolerance = DEFAULT_TOLERANCE,
                 h: float | None = None, order: int = 4, use_analytic: bool = True) -> Reducibility:
    cm = asd_project(curvature_at(A, p, h, order, use_analytic))
    return Reducibility(cm.is_reducible(tol), float(cm.sigma[1]), cm)


def observed_order(A: ConnectionSpec, p, h: float, order: int = 4) -> float:
    """log2 of the error ratio between steps h and h/2 against the analytic curvature."""
    if A.analytic_jacobian is None:
        raise InvalidArgument("observed order needs an analytic Jacobian")
    exact = curvature_at(A, p, use_analytic=True)
    e1 = np.linalg.norm(curvature_at(A, p, h, order, use_analytic=False) - exact)
    e2 = np.linalg.norm(curvature_at(A, p, h / 2, order, use_analytic=False) - exact)
    return float(np.log2(e1 / e2))


# --- compactification boundary --------------------------------------------

@dataclass(frozen=True)
class BoundaryCase:
    """Which boundary stratum a limit of points of nu_p can land in.

    1: (nu_p ∩ M_{k-m}) x S^m(X) with m < k
    2: M_{k-m} x {p} x S^{m-1}(X)
    3: M_0 x S^k(X)
    """

    case_id: int
    m: int
    k: int
    p_in_bubble_set: bool
    limit_reducible: bool


def classify_boundary_case(m: int, k: int, p_in_bubble_set: bool, limit_reducible: bool = True) -> BoundaryCase:
    if m <= 0 or m > k:
        raise InvalidArgument(f"need 0 < m <= k, got m={m}, k={k}")
    if p_in_bubble_set:
        case = 2
    elif m == k:
        case = 3
    else:
        if not limit_reducible:
            # rank <= 1 is a closed condition, so the limit curvature must stay reducible
            raise InconsistentLimit("a limit away from the bubbles must have reducible F-(p)")
        case = 1
    return BoundaryCase(case, m, k, p_in_bubble_set, limit_reducible)


# --- descriptors ----------------------------------------------------------

def _number(v, path):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DescriptorError(path, f"expected a number, got {type(v).__name__}")
    return float(v)


def _vector(v, n, path):
    if not isinstance(v, list) or len(v) != n:
        raise DescriptorError(path, f"expected a list of {n} numbers")
    return np.array([_number(x, f"{path}[{t}]") for t, x in enumerate(v)])


def connection_from_descriptor(desc: dict) -> ConnectionSpec:
    """Build a connection from {"kind": "flat" | "linear" | "bpst", ...}.

    Optional keys for every kind: "base" (4 numbers) and "radius". A bpst
    descriptor's base defaults to its center.
    """
    if not isinstance(desc, dict):
        raise DescriptorError("$", "descriptor must be a JSON object")
    kind = desc.get("kind")
    if kind not in ("flat", "linear", "bpst"):
        raise DescriptorError("$.kind", f"expected 'flat', 'linear' or 'bpst', got {kind!r}")
    radius = _number(desc.get("radius", 1.0), "$.radius")
    if radius <= 0:
        raise DescriptorError("$.radius", "must be positive")
    base = _vector(desc["base"], 4, "$.base") if "base" in desc else None
    if kind == "flat":
        return flat_connection(base, radius)
    if kind == "linear":
        if "c" not in desc:
            raise DescriptorError("$.c", "missing")
        c = desc["c"]
        if not isinstance(c, list) or len(c) != 3:
            raise DescriptorError("$.c", "expected 3 lists of 4x4 antisymmetric matrices")
        arr = np.array([[_vector(row, 4, f"$.c[{a}][{mu}]") for mu, row in enumerate(
            _rows(c[a], f"$.c[{a}]"))] for a in range(3)])
        if not np.array_equal(arr, -np.transpose(arr, (0, 2, 1))):
            raise DescriptorError("$.c", "each c[a] must be antisymmetric")
        return linear_connection(arr, base, radius)
    if "center" not in desc:
        raise DescriptorError("$.center", "missing")
    center = _vector(desc["center"], 4, "$.center")
    if "lambda" not in desc:
        raise DescriptorError("$.lambda", "missing")
    lam = _number(desc["lambda"], "$.lambda")
    if lam <= 0:
        raise DescriptorError("$.lambda", "must be positive")
    A = bpst_connection(center, lam, radius)
    if base is not None:
        A.base = base
    return A


def _rows(m, path):
    if not isinstance(m, list) or len(m) != 4:
        raise DescriptorError(path, "expected a 4x4 matrix")
    return m


def load_descriptor(path) -> ConnectionSpec:
    with open(path) as fh:
        try:
            desc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError("$", f"invalid JSON: {exc}") from exc
    return connection_from_descriptor(desc)
