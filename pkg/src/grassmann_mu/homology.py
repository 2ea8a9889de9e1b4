"""Integer cellular homology of G_N from the Schubert chain complex."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import InvalidArgument, PreconditionViolation
from .intlattice import (
    IntMatrix,
    integer_kernel_basis,
    rational_rank,
    smith_normal_form,
    solve_in_lattice,
    stack_columns,
)
from .schubert import Chain, boundary_matrix, boundary_of_chain, chain_vector, enumerate_cells, top_dimension


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    def to_json(self, N: int | None = None) -> dict:
        out = {"q": self.degree, "free_rank": self.free_rank, "torsion": list(self.torsion)}
        if N is not None:
            out = {"N": N, **out}
        return out


@dataclass(frozen=True)
class HomologyClass:
    """Coordinates of a class: free part, then torsion part (residues mod each factor).

    The sign of a free coordinate depends on the computed basis; only its
    magnitude is meaningful.
    """

    degree: int
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    torsion_orders: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    @property
    def is_generator(self) -> bool:
        """Generator of a rank-1 free group: free coordinate +-1, torsion part 0."""
        return len(self.free) == 1 and abs(self.free[0]) == 1 and not any(self.torsion)

    @property
    def spans_free_summand(self) -> bool:
        """True when the class generates a direct summand isomorphic to Z."""
        g = 0
        for x in self.free:
            g = gcd(g, x)
        return g == 1 and not any(self.torsion)


@dataclass(frozen=True)
class _Basis:
    # columns of ``cycles`` are a Z-basis of ker d_q in cell coordinates
    cycles: IntMatrix
    # U from the SNF of im d_{q+1} written in cycle coordinates
    U: IntMatrix
    factors: tuple[int, ...]
    group: HomologyGroup


def _check_range(N: int, q: int) -> None:
    if N < 3:
        raise InvalidArgument(f"N must be at least 3, got {N}")
    if not 0 <= q <= top_dimension(N):
        raise InvalidArgument(f"degree {q} outside [0, {top_dimension(N)}] for N={N}")


@lru_cache(maxsize=None)
def _d(N: int, q: int) -> IntMatrix:
    """d_q with the conventions d_0 = 0 (0 x n_0) and d_{top+1} = 0 (n_top x 0)."""
    if q == 0:
        return IntMatrix(0, len(enumerate_cells(N, 0)))
    if q == top_dimension(N) + 1:
        return IntMatrix(len(enumerate_cells(N, q - 1)), 0)
    return boundary_matrix(N, q)


@lru_cache(maxsize=None)
def _basis(N: int, q: int) -> _Basis:
    n_q = len(enumerate_cells(N, q))
    cycles = stack_columns(integer_kernel_basis(_d(N, q)), n_q)
    image = _d(N, q + 1)
    # Express each boundary in the cycle basis; exact because ker d_q is saturated.
    cols = []
    for c in range(image.cols):
        y = solve_in_lattice(cycles, image.column(c))
        assert y is not None, "boundary not in the cycle lattice"
        cols.append(y)
    X = stack_columns(cols, cycles.cols)
    snf = smith_normal_form(X)
    factors = list(snf.invariant_factors) + [0] * (cycles.cols - len(snf.invariant_factors))
    free_rank = sum(1 for d in factors if d == 0)
    torsion = tuple(d for d in factors if d > 1)
    return _Basis(cycles, snf.U, tuple(factors), HomologyGroup(q, free_rank, torsion))


def homology_group(N: int, q: int) -> HomologyGroup:
    _check_range(N, q)
    return _basis(N, q).group


def betti_rational(N: int, q: int) -> int:
    """Betti number from rational ranks only (no Smith normal form involved)."""
    _check_range(N, q)
    n_q = len(enumerate_cells(N, q))
    return n_q - rational_rank(_d(N, q)) - rational_rank(_d(N, q + 1))


def is_cycle(c: Chain) -> bool:
    if c.is_zero():
        return True
    if c.degree < 1:
        raise InvalidArgument("is_cycle needs a chain of degree >= 1")
    return boundary_of_chain(c).is_zero()


def class_of(c: Chain, N: int) -> HomologyClass:
    _check_range(N, c.degree)
    if c.degree >= 1 and not is_cycle(c):
        raise PreconditionViolation("class_of requires a cycle")
    b = _basis(N, c.degree)
    y = solve_in_lattice(b.cycles, chain_vector(c, N))
    if y is None:
        raise PreconditionViolation("chain is not in the cycle lattice")
    z = b.U.apply(y) if y else []
    free, tors, orders = [], [], []
    for t, d in enumerate(b.factors):
        if d == 0:
            free.append(z[t])
        elif d > 1:
            tors.append(z[t] % d)
            orders.append(d)
    return HomologyClass(c.degree, tuple(free), tuple(tors), tuple(orders))


@dataclass(frozen=True)
class EulerReport:
    N: int
    cell_sum: int
    homology_sum: int
    rational_sum: int
    per_degree: tuple[tuple[int, int, int, int], ...] = field(repr=False, default=())

    @property
    def consistent(self) -> bool:
        return self.cell_sum == self.homology_sum == self.rational_sum

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "cell_alternating_sum": self.cell_sum,
            "homology_alternating_sum": self.homology_sum,
            "rational_alternating_sum": self.rational_sum,
            "consistent": self.consistent,
        }


def euler_consistency(N: int) -> EulerReport:
    if N < 3:
        raise InvalidArgument(f"N must be at least 3, got {N}")
    cells = hom = rat = 0
    rows = []
    for q in range(top_dimension(N) + 1):
        n_q = len(enumerate_cells(N, q))
        h = homology_group(N, q).free_rank
        r = betti_rational(N, q)
        s = (-1) ** q
        cells += s * n_q
        hom += s * h
        rat += s * r
        rows.append((q, n_q, h, r))
    return EulerReport(N, cells, hom, rat, tuple(rows))


def snf_certificate(N: int, q: int) -> bool:
    """U d_q V == S re-multiplied exactly."""
    A = _d(N, q)
    return smith_normal_form(A).verify(A)


def dd_certificate(N: int) -> bool:
    top = top_dimension(N)
    return all((_d(N, q - 1) @ _d(N, q)).is_zero() for q in range(1, top + 2))
