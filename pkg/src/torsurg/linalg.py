"""Exact integer matrices: Smith normal form, determinants, signatures."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class NotSquareError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


class DegenerateFormError(ValueError):
    """Symmetric form with a nontrivial radical where a nondegenerate one is needed."""


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{e:>3}" for e in r) for r in self.to_rows())


HYPERBOLIC = IntMatrix.from_rows([[0, 1], [1, 0]])


def direct_sum(blocks: Iterable[IntMatrix]) -> IntMatrix:
    blocks = list(blocks)
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out, m)


def _require_square(a: IntMatrix) -> None:
    if not a.is_square:
        raise NotSquareError(f"expected a square matrix, got {a.rows}x{a.cols}")


def _require_symmetric(a: IntMatrix) -> None:
    _require_square(a)
    if not a.is_symmetric():
        raise NotSymmetricError("matrix is not symmetric")


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``D = U @ a @ V``, ``U``/``V`` unimodular.

    ``D`` is diagonal with nonnegative entries and each diagonal entry divides
    the next.  Pivots are chosen as the entry of smallest absolute value in
    the remaining block (row-major scan order on ties).
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            # divisibility: fold a row carrying a non-multiple into row t
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix.from_rows(u, m), IntMatrix.from_rows(d, n), IntMatrix.from_rows(v, n)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    _require_square(a)
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: IntMatrix) -> int:
    _, d, _ = smith_normal_form(a)
    return sum(1 for i in range(min(d.rows, d.cols)) if d[i, i] != 0)


def congruence_diagonal(a: IntMatrix) -> list[Fraction]:
    """Diagonal of ``P^T a P`` for some invertible rational ``P``."""
    _require_symmetric(a)
    n = a.rows
    m = [[Fraction(x) for x in row] for row in a.to_rows()]

    def sym_swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    def sym_add(src, dst):  # e_dst += e_src on both sides
        m[dst] = [x + y for x, y in zip(m[dst], m[src])]
        for row in m:
            row[dst] += row[src]

    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                sym_swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    continue
                # zero diagonal: new m[k][k] = 2 m[k][j] != 0
                sym_add(j, k)
        p = m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
                for row in m:
                    row[i] -= f * row[k]
    return [m[i][i] for i in range(n)]


def inertia(a: IntMatrix) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a symmetric integer form."""
    diag = congruence_diagonal(a)
    pos = sum(1 for x in diag if x > 0)
    neg = sum(1 for x in diag if x < 0)
    return pos, neg, len(diag) - pos - neg


def signature(a: IntMatrix, allow_degenerate: bool = False) -> int:
    """Signature of a symmetric form.

    Raises ``NotSymmetricError`` for non-symmetric input and
    ``DegenerateFormError`` for a degenerate one unless ``allow_degenerate``,
    in which case the radical is split off first.
    """
    pos, neg, zero = inertia(a)
    if zero and not allow_degenerate:
        raise DegenerateFormError(f"form has a radical of rank {zero}")
    return pos - neg


def parity(a: IntMatrix) -> Parity:
    _require_symmetric(a)
    return Parity.EVEN if all(a[i, i] % 2 == 0 for i in range(a.rows)) else Parity.ODD


def is_unimodular(a: IntMatrix) -> bool:
    return a.is_square and abs(determinant(a)) == 1
