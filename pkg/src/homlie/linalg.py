"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are immutable :class:`Matrix` values.  Everything is computed by
plain Gaussian elimination with rational pivots, so results are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; raises ValueError on anything else."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational scalar: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(n, d)


def format_scalar(q) -> str:
    q = to_scalar(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors ---------------------------------------------------------------

def vector(values: Iterable) -> Vector:
    return tuple(to_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Sequence) -> Vector:
    c = to_scalar(c)
    return tuple(c * a for a in v)


def vec_combine(terms: Iterable[tuple], n: int) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs, all vectors of length ``n``."""
    acc = [Fraction(0)] * n
    for c, v in terms:
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a
    return tuple(acc)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable rectangular matrix of fractions.

    Column ``c`` of a matrix representing a linear map is the image of the
    ``c``-th source basis vector.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("matrix rows have unequal lengths")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        rows = [[0] * n for _ in range(n)]
        for i, x in enumerate(entries):
            rows[i][i] = x
        return cls(rows, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        columns = [vector(c) for c in columns]
        return cls([[c[r] for c in columns] for r in range(nrows)], len(columns))

    @classmethod
    def block_diag(cls, a: "Matrix", b: "Matrix") -> "Matrix":
        rows = [r + zero_vector(b.ncols) for r in a.rows]
        rows += [zero_vector(a.ncols) + r for r in b.rows]
        return cls(rows, a.ncols + b.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self._ncols)

    def __getitem__(self, idx):
        r, c = idx
        return self._rows[r][c]

    def row(self, r: int) -> Vector:
        return self._rows[r]

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self._rows)

    def columns(self) -> list:
        return [self.column(c) for c in range(self._ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.columns(), self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self._ncols:
            raise ValueError(f"vector of length {len(v)} against {self.shape} matrix")
        nz = [(c, x) for c, x in enumerate(v) if x]
        return tuple(sum((row[c] * x for c, x in nz), Fraction(0)) for row in self._rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.nrows != self._ncols:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [self.apply(other.column(c)) for c in range(other.ncols)]
            return Matrix.from_columns(cols, self.nrows)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix((vec_add(a, b) for a, b in zip(self._rows, other._rows)), self._ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix((vec_sub(a, b) for a, b in zip(self._rows, other._rows)), self._ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix((vec_scale(c, r) for r in self._rows), self._ncols)

    __rmul__ = scale

    def power(self, k: int) -> "Matrix":
        if self.nrows != self._ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            inv = inverse(self)
            if inv is None:
                raise ZeroDivisionError("negative power of a singular matrix")
            return inv.power(-k)
        result = Matrix.identity(self._ncols)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self._ncols}: [{body}])"


def as_matrix(m, ncols: Optional[int] = None) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m, ncols)


# -- elimination -----------------------------------------------------------

def rref(m, ncols: Optional[int] = None) -> tuple[list, list]:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero reduced rows
    (as lists) and ``pivots`` their pivot columns.
    """
    m = as_matrix(m, ncols)
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        nz = [j for j in range(c, m.ncols) if pr[j] != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m, ncols: Optional[int] = None) -> int:
    return len(rref(m, ncols)[1])


def kernel_basis(m, ncols: Optional[int] = None) -> list:
    """Basis of ``{v : m v = 0}`` as a list of column vectors."""
    m = as_matrix(m, ncols)
    rows, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.ncols
        v[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve(m, b: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """One solution ``x`` of ``m x = b`` (free variables set to 0), or None."""
    m = as_matrix(m, ncols)
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.shape} matrix")
    aug = Matrix([r + (to_scalar(x),) for r, x in zip(m.rows, b)], m.ncols + 1)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(m) -> Optional[Matrix]:
    m = as_matrix(m)
    n = m.nrows
    if n != m.ncols:
        raise ValueError(f"inverse of a non-square {m.shape} matrix")
    if n == 0:
        return m
    aug = Matrix([r + unit_vector(n, i) for i, r in enumerate(m.rows)], 2 * n)
    rows, pivots = rref(aug)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        return None
    return Matrix([row[n:] for row in rows], n)


def span_basis(vectors: Iterable[Sequence], n: int) -> list:
    """Reduced echelon basis of the span of ``vectors`` in dimension ``n``."""
    vectors = [vector(v) for v in vectors]
    if not vectors:
        return []
    rows, _ = rref(Matrix(vectors, n))
    return [tuple(r) for r in rows]


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if is_zero_vector(v):
        return True
    if not basis:
        return False
    return rank(Matrix(list(basis) + [v], len(v))) == rank(Matrix(basis, len(v)))


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """Coefficients expressing ``v`` in the (independent) vectors ``basis``."""
    if not basis:
        return () if is_zero_vector(v) else None
    return solve(Matrix.from_columns(basis, len(v)), v)
