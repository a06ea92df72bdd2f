"""Exact rational scalars and small dense rational matrices.

The scalar type is ``gmpy2.mpq`` when gmpy2 is importable, otherwise
``fractions.Fraction``.  Set ``AFFGEBRA_PURE_PYTHON=1`` to force the
stdlib path (useful for benchmarking and for checking that nothing
depends on backend-specific behaviour).
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

PURE_PYTHON = os.environ.get("AFFGEBRA_PURE_PYTHON", "") not in ("", "0")

try:
    if PURE_PYTHON:
        raise ImportError
    from gmpy2 import mpq as Rational

    BACKEND = "gmpy2"
except ImportError:
    Rational = Fraction
    BACKEND = "fractions"

ZERO = Rational(0)
ONE = Rational(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def Q(x, den=None):
    """Coerce ``x`` (int, str, Fraction, mpq) to the backend rational type."""
    if den is not None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return Rational(int(x), int(den))
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings or ints")
    return Rational(x)


def parse_rational(text: str):
    """Parse ``"p"`` or ``"p/q"``; raises ValueError on anything else."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Rational(int(num), int(den) if den else 1)


def format_rational(x) -> str:
    x = Rational(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def is_square_rational(x) -> bool:
    x = Rational(x)
    if x < 0:
        return False
    return _is_square_int(int(x.numerator)) and _is_square_int(int(x.denominator))


def rational_sqrt(x):
    """Exact square root of a rational perfect square."""
    if not is_square_rational(x):
        raise ValueError(f"{format_rational(x)} is not a rational square")
    x = Rational(x)
    return Rational(math.isqrt(int(x.numerator)), math.isqrt(int(x.denominator)))


def _is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


# -- vectors are plain tuples -------------------------------------------------

def vector(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def unit(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def vadd(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise DimensionMismatch(f"lengths {len(x)} and {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise DimensionMismatch(f"lengths {len(x)} and {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


class RationalMatrix:
    """Immutable dense matrix over Q, stored row-major.

    Column ``j`` holds the image of the ``j``-th basis vector when the
    matrix represents a linear map.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(Q(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows: tuple) -> RationalMatrix:
        # rows already hold backend rationals
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else 0
        return m

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls._wrap(tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls._wrap(tuple((ZERO,) * ncols for _ in range(nrows)))

    @classmethod
    def diag(cls, *values) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> RationalMatrix:
        if not columns:
            return cls._wrap(())
        return cls([[col[i] for col in columns] for i in range(len(columns[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple:
        return tuple(v for row in self._rows for v in row)

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same(other)
        return RationalMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same(other)
        return RationalMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows))

    def scale(self, c) -> RationalMatrix:
        c = Q(c)
        return RationalMatrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows))

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = other.columns()
            return RationalMatrix._wrap(
                tuple(tuple(_dot(r, c) for c in cols) for r in self._rows)
            )
        if len(other) != self.ncols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(other)}")
        return tuple(_dot(r, other) for r in self._rows)

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix._wrap(tuple(zip(*self._rows)))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(v == 0 for r in self._rows for v in r)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> RationalMatrix:
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a nested list")
        return cls([[_json_scalar(v) for v in r] for r in data])

    def _check_same(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")


def _json_scalar(v):
    if isinstance(v, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(v, (int, str)):
        return Q(v)
    raise ValueError(f"expected 'p/q' string or int, got {v!r}")


def _dot(x: Sequence, y: Sequence):
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc += a * b
    return acc


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row-echelon form and the pivot columns."""
    a = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                k = a[i][c]
                a[i] = [x - k * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if nrows == 0:
        return m, ()
    return RationalMatrix._wrap(tuple(tuple(row) for row in a)), tuple(pivots)


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: RationalMatrix) -> list[RationalMatrix]:
    """Basis of {x : m x = 0} as column vectors, one per free variable.

    Free variables are taken in increasing column order; the basis vector
    for free column ``j`` has a 1 in slot ``j`` and 0 in the other free slots.
    """
    red, pivots = rref(m)
    ncols = m.ncols
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        x = [ZERO] * ncols
        x[j] = ONE
        for i, p in enumerate(pivots):
            x[p] = -red[i, j]
        basis.append(RationalMatrix._wrap(tuple((v,) for v in x)))
    return basis


def solve(m: RationalMatrix, b: Sequence) -> tuple | None:
    """One exact solution of ``m x = b`` (free variables set to 0), or None."""
    if len(b) != m.nrows:
        raise DimensionMismatch(f"rhs length {len(b)} for {m.shape}")
    aug = RationalMatrix._wrap(tuple(r + (Q(v),) for r, v in zip(m.rows, b)))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red[i, m.ncols]
    return tuple(x)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if not m.is_square():
        raise DimensionMismatch(f"inverse of non-square {m.shape}")
    n = m.nrows
    aug = RationalMatrix._wrap(tuple(r + unit(n, i) for i, r in enumerate(m.rows)))
    red, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise SingularMatrix("matrix is singular")
    return RationalMatrix._wrap(tuple(r[n:] for r in red.rows))


def det(m: RationalMatrix):
    if not m.is_square():
        raise DimensionMismatch(f"det of non-square {m.shape}")
    a = [list(r) for r in m.rows]
    n = m.nrows
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                k = a[i][c] / a[c][c]
                a[i] = [x - k * y for x, y in zip(a[i], a[c])]
    return d


def stack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    """Vertical concatenation."""
    rows = tuple(r for b in blocks for r in b.rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("column counts differ")
    return RationalMatrix._wrap(rows)
