"""Dense exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are immutable
:class:`QMatrix` values stored row-major; vectors are plain tuples of
Fractions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotFullRowRank, ShapeMismatch

QVector = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean value {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def vec(xs: Iterable) -> QVector:
    return tuple(Q(x) for x in xs)


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), cols, tuple(Q(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(list(zip(*columns)) if columns else [[]] * rows,
                             cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> QVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> QVector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "QMatrix":
        c = Q(c)
        return QMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return QMatrix(self.rows, other.cols, tuple(
                sum((a * b for a, b in zip(self.row(i), c)), Fraction(0))
                for i in range(self.rows) for c in ocols))
        v = tuple(other)
        if len(v) != self.cols:
            raise ShapeMismatch(f"cannot multiply {self.shape} by a vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows)) + "]"


def hstack(*ms: QMatrix) -> QMatrix:
    rows = ms[0].rows
    return QMatrix.from_rows([sum((list(m.row(i)) for m in ms), []) for i in range(rows)],
                             cols=sum(m.cols for m in ms))


def vstack(*ms: QMatrix) -> QMatrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ShapeMismatch("vstack needs equal column counts")
    return QMatrix(sum(m.rows for m in ms), cols, sum((m.entries for m in ms), ()))


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # Gauss-Jordan in place; pivot = first nonzero entry at or below the current row.
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(M: QMatrix) -> tuple[QMatrix, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns (increasing) and rank."""
    rows, pivots = _rref_rows(M.to_rows(), M.cols)
    return QMatrix.from_rows(rows, cols=M.cols) if M.rows else M, tuple(pivots), len(pivots)


def rank(M: QMatrix) -> int:
    if M.rows > M.cols:
        M = M.transpose()
    return len(_rref_rows(M.to_rows(), M.cols)[1])


def kernel_basis(M: QMatrix) -> list[QVector]:
    """Basis of the right null space, one vector per free column of the RREF."""
    R, pivots, r = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        basis.append(tuple(v))
    return basis


def det(M: QMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    n = M.rows
    a = M.to_rows()
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(M: QMatrix) -> QMatrix:
    if M.rows != M.cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = M.rows
    R, pivots, r = rref(hstack(M, QMatrix.identity(n)))
    if r < n or pivots[n - 1] != n - 1:
        raise NotFullRowRank("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def right_inverse(M: QMatrix) -> QMatrix:
    """Some X with M @ X = I, namely M^T (M M^T)^{-1}."""
    if M.rows > M.cols or rank(M) < M.rows:
        raise NotFullRowRank(f"{M.rows}x{M.cols} matrix does not have full row rank")
    Mt = M.transpose()
    return Mt @ inverse(M @ Mt)


def is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def sqrt_exact(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def normalize_last(v: Sequence[Fraction]) -> QVector:
    """Scale v so its last nonzero coordinate is 1."""
    last = next(x for x in reversed(v) if x)
    return tuple(x / last for x in v)


@dataclass(frozen=True)
class EigenResult:
    """Outcome of :func:`eigen2x2`.

    ``kind`` is ``"distinct"`` (two rational eigenvalues, largest first, with
    eigenvectors normalized so the last nonzero coordinate is 1),
    ``"repeated"`` or ``"irrational"``.
    """
    kind: str
    trace: Fraction
    det: Fraction
    eigenvalues: tuple = ()
    eigenvectors: tuple = ()

    @property
    def discriminant(self) -> Fraction:
        return self.trace ** 2 - 4 * self.det

    @property
    def char_poly(self) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients of t^2 - tr t + det, highest degree first."""
        return (Fraction(1), -self.trace, self.det)


def eigen2x2(M: QMatrix) -> EigenResult:
    if M.shape != (2, 2):
        raise ShapeMismatch("eigen2x2 needs a 2x2 matrix")
    tr = M[0, 0] + M[1, 1]
    dt = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = tr * tr - 4 * dt
    if disc == 0:
        return EigenResult("repeated", tr, dt, eigenvalues=(tr / 2,))
    if not is_square(disc):
        return EigenResult("irrational", tr, dt)
    s = sqrt_exact(disc)
    values = ((tr + s) / 2, (tr - s) / 2)
    vectors = []
    for t in values:
        (v,) = kernel_basis(M - QMatrix.identity(2).scale(t))
        vectors.append(normalize_last(v))
    return EigenResult("distinct", tr, dt, eigenvalues=values, eigenvectors=tuple(vectors))
