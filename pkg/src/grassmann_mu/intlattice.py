"""Exact integer matrix algebra: Smith normal form, integer kernels, rational rank.

Everything here works on Python ints, so there is no overflow and no floating
point. Matrices are small (a few dozen rows), which keeps dense row-major
lists perfectly adequate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntMatrix:
    """Dense integer matrix with explicit shape, so 2x0 and 0x3 are representable."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not have shape {rows}x{cols}")
            self._data = [[_as_int(x) for x in r] for r in data]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            if not rows:
                raise ValueError("column count is ambiguous for an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        m = cls(n, n)
        for t in range(n):
            m._data[t][t] = 1
        return m

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = cls(rows, cols)
        for t, v in enumerate(values):
            m._data[t][t] = _as_int(v)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        return self._data[r][c]

    def row(self, r: int) -> list[int]:
        return list(self._data[r])

    def column(self, c: int) -> list[int]:
        return [r[c] for r in self._data]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [self.column(c) for c in range(self.cols)])

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(c) for c in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            [[sum(a * b for a, b in zip(r, oc)) for oc in ocols] for r in self._data],
        )

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        return [sum(a * b for a, b in zip(r, vec)) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self._data))))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self._data!r})"


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    # numpy integer scalars
    if hasattr(x, "__index__"):
        return x.__index__()
    raise TypeError(f"non-integer entry {x!r}")


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with U, V unimodular and S diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        n = min(self.S.rows, self.S.cols)
        return [self.S[t, t] for t in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)

    def verify(self, A: IntMatrix) -> bool:
        return self.U @ A @ self.V == self.S


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the smallest nonzero absolute value in the active
    submatrix, ties broken by lowest (row, col). Invariant factors come out
    non-negative with ``d[t] | d[t+1]`` and zeros trailing.
    """
    m, n = A.rows, A.cols
    S = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        if a != b:
            for r in S:
                r[a], r[b] = r[b], r[a]
            for r in V:
                r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for r in range(t, m):
                for c in range(t, n):
                    v = S[r][c]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), r, c)
            if best is None:
                return _finish(U, S, V, m, n)
            _, r, c = best
            swap_rows(t, r)
            swap_cols(t, c)
            p = S[t][t]
            dirty = False
            for r in range(t + 1, m):
                if S[r][t]:
                    add_row(r, t, -(S[r][t] // p))
                    dirty = dirty or S[r][t] != 0
            for c in range(t + 1, n):
                if S[t][c]:
                    add_col(c, t, -(S[t][c] // p))
                    dirty = dirty or S[t][c] != 0
            if dirty:
                continue
            # Row t and column t are clear; enforce divisibility on the rest.
            bad = next(
                (r for r in range(t + 1, m) for c in range(t + 1, n) if S[r][c] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return _finish(U, S, V, m, n)


def _finish(U, S, V, m, n) -> SmithDecomposition:
    return SmithDecomposition(IntMatrix(m, m, U), IntMatrix(m, n, S), IntMatrix(n, n, V))


def integer_kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Basis of the saturated lattice ``{x in Z^cols : A x = 0}``.

    Each vector is sign-normalized so its first nonzero entry is positive.
    """
    snf = smith_normal_form(A)
    basis = []
    for c in range(snf.rank, A.cols):
        vec = snf.V.column(c)
        lead = next(x for x in vec if x != 0)
        if lead < 0:
            vec = [-x for x in vec]
        basis.append(vec)
    return basis


def rational_rank(A: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Deliberately shares no code with :func:`smith_normal_form` so the two can
    cross-check each other.
    """
    M = A.tolist()
    m, n = A.rows, A.cols
    rank = 0
    prev = 1
    for c in range(n):
        if rank == m:
            break
        piv = next((r for r in range(rank, m) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for r in range(rank + 1, m):
            f = M[r][c]
            M[r] = [(p * M[r][k] - f * M[rank][k]) // prev for k in range(n)]
        prev = p
        rank += 1
    return rank


def solve_in_lattice(basis: IntMatrix, vec: Sequence[int]) -> list[int] | None:
    """Integer coordinates y with ``basis @ y == vec``, or None if there are none."""
    if basis.cols == 0:
        return [] if all(x == 0 for x in vec) else None
    snf = smith_normal_form(basis)
    w = snf.U.apply(vec)
    d = snf.invariant_factors
    z = [0] * basis.cols
    for t in range(len(w)):
        if t < len(d) and d[t] != 0:
            if w[t] % d[t]:
                return None
            z[t] = w[t] // d[t]
        elif w[t] != 0:
            return None
    return snf.V.apply(z)


# --- plain-text format: "rows cols" then rows of space-separated integers ---

def format_matrix(A: IntMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines += [" ".join(str(x) for x in A.row(r)) for r in range(A.rows)]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("first line must be 'rows cols'")
    rows, cols = (int(x) for x in lines[0])
    if cols == 0:
        # rows of a zero-column matrix are empty lines
        return IntMatrix(rows, 0)
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    data = []
    for ln, toks in enumerate(body, start=2):
        if len(toks) != cols:
            raise ValueError(f"line {ln}: expected {cols} entries, found {len(toks)}")
        data.append([int(t) for t in toks])
    return IntMatrix(rows, cols, data)


def read_matrix(path) -> IntMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(A: IntMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(A))


def matrix_product_is_zero(A: IntMatrix, B: IntMatrix) -> bool:
    return (A @ B).is_zero()


def stack_columns(vectors: Iterable[Sequence[int]], length: int) -> IntMatrix:
    """Matrix whose columns are ``vectors``; ``length`` fixes the row count when empty."""
    vectors = [list(v) for v in vectors]
    return IntMatrix(length, len(vectors), [[v[r] for v in vectors] for r in range(length)])
