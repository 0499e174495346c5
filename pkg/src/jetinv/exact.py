"""Exact rational scalars and dense exact linear algebra.

Everything in this package computes over the rationals: every identity
being certified is polynomial with rational coefficients, so checking it
at rational points is exact evidence, with no rounding anywhere.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator,
arbitrary precision). Elimination is fraction-free (Bareiss): rows are
scaled to integers and pivoting uses the two-term integer update with
exact division, which keeps intermediate entries polynomially bounded.
This matters because the invariant-space kernels downstream grow quickly.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


def rat(x) -> Fraction:
    """Coerce an int, string ("3/4"), or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(q) -> str:
    """Serialize a rational as "num/den" (always with the denominator)."""
    q = rat(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


class ExactMatrix:
    """Immutable dense matrix over Fraction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(tuple(rat(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry grid does not match declared shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, entries) -> "ExactMatrix":
        entries = [list(row) for row in entries]
        if not entries:
            raise ValueError("cannot infer width of an empty matrix; use zeros")
        return cls(len(entries), len(entries[0]), entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [[Fraction(0)] * cols for _ in range(rows)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = rat(c)
        return ExactMatrix(
            self.rows, self.cols, [[c * a for a in row] for row in self.entries]
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        ot = other.transpose().entries
        return ExactMatrix(
            self.rows,
            other.cols,
            [
                [sum(a * b for a, b in zip(row, col)) for col in ot]
                for row in self.entries
            ],
        )

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.__matmul__(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def mul_vector(self, v: Sequence) -> tuple:
        v = [rat(x) for x in v]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def is_upper_triangular(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(min(i, self.cols))
        )

    def flatten(self) -> tuple:
        """Row-major flattening; the fixed vectorization convention."""
        return tuple(a for row in self.entries for a in row)

    def rank(self) -> int:
        return len(_bareiss_echelon(_integer_rows(self.entries))[1])

    def kernel_basis(self) -> list:
        """Exact null-space basis.

        One vector per free column, carrying 1 in its own free coordinate
        and 0 in the other free coordinates; order follows the column
        order, so the basis is deterministic.
        """
        echelon, pivots = _bareiss_echelon(_integer_rows(self.entries))
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = sum(
                    echelon[r][c] * v[c] for c in range(pc + 1, self.cols) if v[c]
                )
                v[pc] = Fraction(-s, echelon[r][pc]) if s else Fraction(0)
            basis.append(tuple(v))
        return basis

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        scale = Fraction(1)
        int_rows = []
        for row in self.entries:
            d = lcm(*(x.denominator for x in row)) if row else 1
            scale *= d
            int_rows.append([int(x * d) for x in row])
        d = _int_det(int_rows)
        return Fraction(d, 1) / scale

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(row) + [Fraction(i == j) for j in range(n)]
               for i, row in enumerate(self.entries)]
        reduced, pivots = _rref(aug, n + n)
        if list(pivots) != list(range(n)):
            raise ValueError("matrix is singular")
        return ExactMatrix(n, n, [row[n:] for row in reduced])

    def rref(self):
        """Reduced row echelon form and its pivot columns."""
        reduced, pivots = _rref([list(r) for r in self.entries], self.cols)
        return ExactMatrix(self.rows, self.cols, reduced), tuple(pivots)

    def stack_below(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vertical stack")
        return ExactMatrix(
            self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def to_json(self):
        return [[rat_str(a) for a in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        return cls.from_rows([[parse_rat(a) for a in row] for row in data])

    def __repr__(self):
        body = "; ".join(
            " ".join(str(a) for a in row) for row in self.entries
        )
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"

    def _same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")


def _integer_rows(entries) -> list:
    """Clear denominators row by row; row scaling preserves rank and kernel."""
    out = []
    for row in entries:
        if row:
            d = lcm(*(x.denominator for x in row))
            out.append([int(x * d) for x in row])
        else:
            out.append([])
    return out


def _bareiss_echelon(rows: list):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot columns). The two-term update divides by
    the previous pivot, which is exact over the integers (Bareiss).
    """
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, nc):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref(rows: list, ncols: int):
    """Gauss-Jordan over Fraction; used only on small systems."""
    m = rows
    nr = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _int_det(rows: list) -> int:
    """Determinant of an integer matrix; direct formulas up to 3x3."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (piv * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def rank_of_vectors(vectors: Iterable[Sequence], ncols: int) -> int:
    """Rank of the span of row vectors; handles the empty family."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    return ExactMatrix(len(rows), ncols, rows).rank()


def kernel_of_vectors(vectors: Iterable[Sequence], ncols: int) -> list:
    """Common null space of a (possibly empty) family of row functionals."""
    rows = [list(v) for v in vectors]
    if not rows:
        ident = ExactMatrix.identity(ncols)
        return [ident.row(i) for i in range(ncols)]
    return ExactMatrix(len(rows), ncols, rows).kernel_basis()


def row_space_basis(vectors: Iterable[Sequence], ncols: int) -> list:
    """Canonical (RREF) basis of the span of the given row vectors."""
    rows = [[rat(x) for x in v] for v in vectors]
    if not rows:
        return []
    reduced, pivots = _rref(rows, ncols)
    return [tuple(reduced[i]) for i in range(len(pivots))]


def in_row_space(vector: Sequence, vectors: Iterable[Sequence], ncols: int) -> bool:
    rows = [list(v) for v in vectors]
    base = rank_of_vectors(rows, ncols)
    return rank_of_vectors(rows + [list(vector)], ncols) == base


def linear_solve(a: ExactMatrix, b: Sequence):
    """One exact solution of a x = b, or None if the system is inconsistent.

    Free variables, if any, are set to zero.
    """
    b = [rat(x) for x in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(row) + [b[i]] for i, row in enumerate(a.entries)]
    reduced, pivots = _rref(aug, a.cols + 1)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][a.cols]
    return tuple(x)
