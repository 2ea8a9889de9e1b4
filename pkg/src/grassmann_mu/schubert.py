"""Signed Schubert cells of the oriented 3-plane Grassmannian and their boundary operator.

A cell ``e±(i, j, k)`` of G_N consists of the oriented planes whose row-reduced
3 x N representative has pivots (last nonzero entries) in columns i < j < k,
with the sign recording which of the two orientations the rows carry. The cell
has dimension ``i + j + k - 6``.

The boundary of a cell is the six-term formula

    d e±(i,j,k) = (-1)^i       e±(i-1,j,k) -         e∓(i-1,j,k)
                + (-1)^(i+j+1) e±(i,j-1,k) + (-1)^i   e∓(i,j-1,k)
                + (-1)^(i+j+k+1) e±(i,j,k-1) + (-1)^(i+j) e∓(i,j,k-1)

where any term whose index triple leaves ``1 <= i < j < k`` is dropped.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .errors import InvalidArgument
from .intlattice import IntMatrix, write_matrix


@dataclass(frozen=True, order=False)
class CellIndex:
    i: int
    j: int
    k: int
    sign: int = 1
    N: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidArgument(f"sign must be +1 or -1, got {self.sign}")
        if not 1 <= self.i < self.j < self.k:
            raise InvalidArgument(f"need 1 <= i < j < k, got ({self.i},{self.j},{self.k})")
        if self.N == 0:
            object.__setattr__(self, "N", self.k)
        elif self.k > self.N:
            raise InvalidArgument(f"k={self.k} exceeds N={self.N}")

    @property
    def dim(self) -> int:
        return self.i + self.j + self.k - 6

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def flipped(self) -> CellIndex:
        return CellIndex(self.i, self.j, self.k, -self.sign, self.N)

    def with_n(self, N: int) -> CellIndex:
        return CellIndex(self.i, self.j, self.k, self.sign, N)

    def sort_key(self):
        return (self.i, self.j, self.k, 0 if self.sign > 0 else 1)

    def label(self) -> str:
        return f"e{'+' if self.sign > 0 else '-'}({self.i},{self.j},{self.k})"

    def __str__(self) -> str:
        return self.label()


def cell(i: int, j: int, k: int, sign: int = 1, N: int | None = None) -> CellIndex:
    return CellIndex(i, j, k, sign, N if N is not None else k)


def parse_cell(label: str, N: int | None = None) -> CellIndex:
    """Inverse of :meth:`CellIndex.label`, e.g. ``"e+(1,4,5)"``."""
    s = label.strip()
    if len(s) < 4 or s[0] != "e" or s[1] not in "+-" or s[2] != "(" or s[-1] != ")":
        raise InvalidArgument(f"cannot parse cell label {label!r}")
    i, j, k = (int(t) for t in s[3:-1].split(","))
    return cell(i, j, k, 1 if s[1] == "+" else -1, N)


class Chain:
    """Integer combination of cells of a single dimension in a single G_N."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[CellIndex, int] | None = None):
        self.degree = degree
        clean = {}
        for c, coeff in (terms or {}).items():
            if c.dim != degree:
                raise InvalidArgument(f"{c} has dimension {c.dim}, chain has degree {degree}")
            if coeff:
                clean[c] = clean.get(c, 0) + coeff
        self.terms = {c: v for c, v in sorted(clean.items(), key=lambda kv: kv[0].sort_key()) if v}
        if len({c.N for c in self.terms}) > 1:
            raise InvalidArgument("all cells of a chain must share N")

    @classmethod
    def of(cls, c: CellIndex, coeff: int = 1) -> Chain:
        return cls(c.dim, {c: coeff})

    @property
    def N(self) -> int | None:
        return next(iter(self.terms)).N if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def with_n(self, N: int) -> Chain:
        return Chain(self.degree, {c.with_n(N): v for c, v in self.terms.items()})

    def _combine(self, other: Chain, s: int) -> Chain:
        if other.degree != self.degree:
            raise InvalidArgument("cannot add chains of different degree")
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + s * v
        return Chain(self.degree, out)

    def __add__(self, other: Chain) -> Chain:
        return self._combine(other, 1)

    def __sub__(self, other: Chain) -> Chain:
        return self._combine(other, -1)

    def __neg__(self) -> Chain:
        return Chain(self.degree, {c: -v for c, v in self.terms.items()})

    def __rmul__(self, a: int) -> Chain:
        return Chain(self.degree, {c: a * v for c, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return f"Chain({self.degree}, 0)"
        body = " ".join(f"{'+' if v > 0 else '-'} {abs(v)}*{c}" for c, v in self.terms.items())
        return f"Chain({self.degree}, {body})"


def enumerate_cells(N: int, dim: int | None = None) -> list[CellIndex]:
    """All signed cells of G_N in lexicographic order, ``+`` before ``-``."""
    if N < 3:
        raise InvalidArgument(f"N must be at least 3, got {N}")
    out = []
    for i, j, k in combinations(range(1, N + 1), 3):
        if dim is not None and i + j + k - 6 != dim:
            continue
        out.append(CellIndex(i, j, k, 1, N))
        out.append(CellIndex(i, j, k, -1, N))
    return out


def top_dimension(N: int) -> int:
    return 3 * (N - 3)


def _boundary_terms(i: int, j: int, k: int) -> list[tuple[tuple[int, int, int], int, int]]:
    """(triple, same-sign coefficient, opposite-sign coefficient) for each face."""
    return [
        ((i - 1, j, k), (-1) ** i, -1),
        ((i, j - 1, k), (-1) ** (i + j + 1), (-1) ** i),
        ((i, j, k - 1), (-1) ** (i + j + k + 1), (-1) ** (i + j)),
    ]


def boundary(c: CellIndex) -> Chain:
    terms: dict[CellIndex, int] = {}
    for (a, b, d), same, opp in _boundary_terms(c.i, c.j, c.k):
        if not 1 <= a < b < d:
            continue
        terms[CellIndex(a, b, d, c.sign, c.N)] = same
        terms[CellIndex(a, b, d, -c.sign, c.N)] = opp
    return Chain(c.dim - 1, terms)


def boundary_of_chain(ch: Chain) -> Chain:
    out = Chain(ch.degree - 1)
    for c, v in ch.terms.items():
        out = out + v * boundary(c)
    return out


def boundary_matrix(N: int, q: int) -> IntMatrix:
    """Matrix of d_q: columns are the q-cells, rows the (q-1)-cells, in enumeration order."""
    if N < 3:
        raise InvalidArgument(f"N must be at least 3, got {N}")
    if q < 1:
        raise InvalidArgument(f"boundary degree must be at least 1, got {q}")
    src = enumerate_cells(N, q)
    dst = enumerate_cells(N, q - 1)
    row_of = {c: r for r, c in enumerate(dst)}
    M = IntMatrix.zeros(len(dst), len(src))
    data = M._data
    for col, c in enumerate(src):
        for face, coeff in boundary(c).terms.items():
            data[row_of[face]][col] = coeff
    return M


def chain_vector(ch: Chain, N: int) -> list[int]:
    """Coordinates of ``ch`` in the enumeration basis of degree ``ch.degree`` cells of G_N."""
    cells = enumerate_cells(N, ch.degree)
    index = {c: t for t, c in enumerate(cells)}
    vec = [0] * len(cells)
    for c, v in ch.terms.items():
        c = c.with_n(N)
        if c not in index:
            raise InvalidArgument(f"{c} is not a cell of G_{N}")
        vec[index[c]] = v
    return vec


def s_cycle(N: int) -> Chain:
    """The degree-4 chain e+(1,4,5) + e+(1,3,6) - e+(1,2,7)."""
    if N < 7:
        raise InvalidArgument(f"e+(1,2,7) does not exist for N={N}; need N >= 7")
    return Chain(4, {
        CellIndex(1, 4, 5, 1, N): 1,
        CellIndex(1, 3, 6, 1, N): 1,
        CellIndex(1, 2, 7, 1, N): -1,
    })


def dual_triple(c: CellIndex) -> tuple[int, int, int]:
    N = c.N
    return (N + 1 - c.k, N + 1 - c.j, N + 1 - c.i)


def export_boundary_matrices(N: int, outdir, degrees: Iterable[int] | None = None) -> list[Path]:
    """Write ``d_<q>.txt`` in the plain-text matrix format plus ``cells_<q>.txt`` listings."""
    outdir = Path(outdir)
    os.makedirs(outdir, exist_ok=True)
    if degrees is None:
        degrees = range(1, top_dimension(N) + 1)
    written = []
    for q in degrees:
        path = outdir / f"d_{q}.txt"
        write_matrix(boundary_matrix(N, q), path)
        written.append(path)
    for q in range(0, top_dimension(N) + 1):
        path = outdir / f"cells_{q}.txt"
        path.write_text("".join(c.label() + "\n" for c in enumerate_cells(N, q)))
        written.append(path)
    return written
