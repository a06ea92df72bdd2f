"""The affgebra X(G; g, f, s) on the standard affine model of a Lie algebra.

Points are coefficient tuples.  The heap is a - b + c, the scalar action is
(1 - t) a + t b and the bracket is

    {a, b} = [a, b] + g(a) + f(b - a) + s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import DimensionMismatch
from .exactnum import ONE, Q, RationalMatrix, format_rational, unit, vadd, vsub
from .genderiv import GenDerivPair, verify_pair
from .liecore import LieAlgebra, Violation


def _same_length(*vs):
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise DimensionMismatch(f"vector lengths {[len(v) for v in vs]}")


def heap(a, b, c) -> tuple:
    _same_length(a, b, c)
    return tuple(x - y + z for x, y, z in zip(a, b, c))


def heap_fold(*xs) -> tuple:
    """x1 - x2 + x3 - ... for an odd number of points."""
    if len(xs) % 2 == 0:
        raise ValueError("heap fold needs an odd number of points")
    _same_length(*xs)
    out = list(xs[0])
    for k in range(1, len(xs), 2):
        out = [o - y + z for o, y, z in zip(out, xs[k], xs[k + 1])]
    return tuple(out)


def action(alpha, a, b) -> tuple:
    _same_length(a, b)
    alpha = Q(alpha)
    beta = ONE - alpha
    return tuple(beta * x + alpha * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Affgebra:
    pair: GenDerivPair
    s: tuple
    verified: bool = field(default=None)
    _h: RationalMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.pair.algebra.dim
        if len(self.s) != n:
            raise DimensionMismatch(f"s has length {len(self.s)}, expected {n}")
        object.__setattr__(self, "s", tuple(Q(x) for x in self.s))
        if self.verified is None:
            object.__setattr__(self, "verified", verify_pair(self.pair) is None)
        # {a, b} = [a, b] + (g - f) a + f b + s
        object.__setattr__(self, "_h", self.pair.g - self.pair.f)

    @classmethod
    def build(cls, algebra: LieAlgebra, f, g, s) -> Affgebra:
        return cls(GenDerivPair(_as_matrix(f), _as_matrix(g), algebra), tuple(s))

    @property
    def algebra(self) -> LieAlgebra:
        return self.pair.algebra

    @property
    def f(self) -> RationalMatrix:
        return self.pair.f

    @property
    def g(self) -> RationalMatrix:
        return self.pair.g

    def bracket(self, a, b) -> tuple:
        return aff_bracket(self, a, b)

    def __eq__(self, other):
        if not isinstance(other, Affgebra):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.f == other.f
            and self.g == other.g
            and self.s == other.s
        )

    def __hash__(self):
        return hash((self.algebra, self.f, self.g, self.s))

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "s": [format_rational(x) for x in self.s],
        }

    @classmethod
    def from_json(cls, doc) -> Affgebra:
        alg = LieAlgebra.from_json(doc["algebra"])
        return cls.build(
            alg,
            RationalMatrix.from_json(doc["f"]),
            RationalMatrix.from_json(doc["g"]),
            [Q(x) for x in doc["s"]],
        )


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def aff_bracket(X: Affgebra, a, b) -> tuple:
    n = X.algebra.dim
    if len(a) != n or len(b) != n:
        raise DimensionMismatch(f"vectors of length {len(a)}, {len(b)} in dim {n}")
    lie = X.algebra.bracket(a, b)
    ha = X._h @ tuple(a)
    fb = X.f @ tuple(b)
    return tuple(w + x + y + z for w, x, y, z in zip(lie, ha, fb, X.s))


@lru_cache(maxsize=None)
def lattice(nvars: int, degree: int) -> tuple:
    """Nonnegative integer points with coordinate sum <= degree.

    A polynomial of total degree <= ``degree`` vanishing on all of them is
    identically zero, so evaluating there is a complete check.
    """
    pts = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            p = [0] * nvars
            for i in combo:
                p[i] += 1
            pts.append(tuple(p))
    return tuple(pts)


def _antisymmetry_defect(X, a, b):
    br = X.bracket
    return vsub(heap(br(a, b), br(a, a), br(b, a)), br(b, b))


def _jacobi_defect(X, a, b, c):
    br = X.bracket
    lhs = heap_fold(
        br(a, br(b, c)), br(a, br(a, a)), br(b, br(c, a)), br(b, br(b, b)), br(c, br(a, b))
    )
    return vsub(lhs, br(c, br(c, c)))


def _split(p, n, k):
    return tuple(tuple(Q(x) for x in p[i * n:(i + 1) * n]) for i in range(k))


def check_axioms(X: Affgebra) -> Violation | None:
    """Affine antisymmetry and the affine Jacobi identity, proved exactly.

    The antisymmetry defect is a polynomial of degree <= 2 in the 2n
    coordinates of (a, b) and the Jacobi defect has degree <= 3 in the 3n
    coordinates of (a, b, c); both are checked on the matching lattice,
    which contains every grid point drawn from {0, e1, ..., en}.
    """
    n = X.algebra.dim
    for p in lattice(2 * n, 2):
        a, b = _split(p, n, 2)
        if any(_antisymmetry_defect(X, a, b)):
            return Violation("affine-antisymmetry", (_label(a), _label(b)))
    for p in lattice(3 * n, 3):
        a, b, c = _split(p, n, 3)
        if any(_jacobi_defect(X, a, b, c)):
            return Violation("affine-jacobi", (_label(a), _label(b), _label(c)))
    return None


def _label(v) -> str:
    return "(" + ",".join(format_rational(x) for x in v) + ")"


def tangent_bracket(X: Affgebra, e, u, v) -> tuple:
    br = X.bracket
    eu, ev = vadd(e, u), vadd(e, v)
    return tuple(
        w - x + y - z for w, x, y, z in zip(br(eu, ev), br(eu, e), br(e, e), br(e, ev))
    )


def tangent_lie(X: Affgebra, e) -> LieAlgebra:
    """Lie algebra on the fibre at e: (u, v) -> {e+u, e+v} - {e+u, e} + {e, e} - {e, e+v}."""
    n = X.algebra.dim
    if len(e) != n:
        raise DimensionMismatch(f"base point of length {len(e)} in dim {n}")
    e = tuple(Q(x) for x in e)
    basis = [unit(n, i) for i in range(n)]
    c = tuple(
        tuple(tangent_bracket(X, e, basis[i], basis[j]) for j in range(n)) for i in range(n)
    )
    return LieAlgebra(n, c)
