"""Pairs of linear maps (f, g) with

    f([a, b]) = [f(a), b] + [a, f(b)] - [a, g(b)]

solved as a homogeneous linear system over Q, and the closed forms of
those pairs for the three catalog algebras.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameter, DimensionMismatch
from .exactnum import ZERO, Q, RationalMatrix, nullspace, rank, stack, unit
from .liecore import LieAlgebra, Violation, catalog


@dataclass(frozen=True)
class GenDerivPair:
    f: RationalMatrix
    g: RationalMatrix
    algebra: LieAlgebra

    def __post_init__(self):
        n = self.algebra.dim
        if self.f.shape != (n, n) or self.g.shape != (n, n):
            raise DimensionMismatch(f"f, g must be {n}x{n}")

    def coordinates(self) -> tuple:
        """f entries row-major, then g entries row-major."""
        return self.f.entries + self.g.entries

    def verify(self) -> Violation | None:
        return verify_pair(self)

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "g": self.g.to_json()}


def verify_pair(p: GenDerivPair) -> Violation | None:
    """Check the identity on every ordered basis pair; bilinearity makes this complete."""
    alg = p.algebra
    n = alg.dim
    fcols, gcols = p.f.columns(), p.g.columns()
    for i in range(n):
        ei = unit(n, i)
        for j in range(n):
            ej = unit(n, j)
            lhs = p.f @ alg.bracket(ei, ej)
            rhs1 = alg.bracket(fcols[i], ej)
            rhs2 = alg.bracket(ei, fcols[j])
            rhs3 = alg.bracket(ei, gcols[j])
            rhs = tuple(a + b - c for a, b, c in zip(rhs1, rhs2, rhs3))
            if lhs != rhs:
                return Violation("generalized-derivation", (i + 1, j + 1))
    return None


@dataclass(frozen=True)
class PairSpace:
    algebra: LieAlgebra
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinate_matrix(self) -> RationalMatrix:
        n = self.algebra.dim
        if not self.basis:
            return RationalMatrix.zeros(0, 2 * n * n)
        return RationalMatrix([p.coordinates() for p in self.basis])

    def contains(self, p: GenDerivPair) -> bool:
        m = self.coordinate_matrix()
        return rank(stack([m, RationalMatrix([p.coordinates()])])) == rank(m)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "dimension": self.dimension,
            "basis": [p.to_json() for p in self.basis],
        }

    @classmethod
    def from_json(cls, doc) -> PairSpace:
        alg = LieAlgebra.from_json(doc["algebra"])
        basis = tuple(
            GenDerivPair(RationalMatrix.from_json(b["f"]), RationalMatrix.from_json(b["g"]), alg)
            for b in doc["basis"]
        )
        if len(basis) != int(doc["dimension"]):
            raise ValueError("dimension does not match basis length")
        return cls(alg, basis)


def pair_system(alg: LieAlgebra) -> RationalMatrix:
    """Coefficient matrix of the identity in the 2 n^2 unknowns (f row-major, then g).

    Every ordered pair (i, j) contributes rows, i = j included: the
    [a, g(b)] term is not antisymmetric in (a, b).
    """
    n = alg.dim
    c = alg.constants
    nn = n * n

    def fidx(r, col):
        return r * n + col

    def gidx(r, col):
        return nn + r * n + col

    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * (2 * nn)
                # f([e_i, e_j])_k = sum_m c^m_ij f[k][m]
                for m in range(n):
                    if c[i][j][m]:
                        row[fidx(k, m)] += c[i][j][m]
                # - [f e_i, e_j]_k = - sum_m f[m][i] c^k_mj
                for m in range(n):
                    if c[m][j][k]:
                        row[fidx(m, i)] -= c[m][j][k]
                # - [e_i, f e_j]_k + [e_i, g e_j]_k
                for m in range(n):
                    if c[i][m][k]:
                        row[fidx(m, j)] -= c[i][m][k]
                        row[gidx(m, j)] += c[i][m][k]
                rows.append(row)
    if not rows:
        return RationalMatrix.zeros(0, 2 * nn)
    return RationalMatrix(rows)


def solve_pairs(alg: LieAlgebra) -> PairSpace:
    n = alg.dim
    system = pair_system(alg)
    if system.nrows == 0:
        vecs = [tuple(unit(2 * n * n, i)) for i in range(2 * n * n)]
    else:
        vecs = [v.col(0) for v in nullspace(system)]
    basis = tuple(_pair_from_coordinates(alg, v) for v in vecs)
    return PairSpace(alg, basis)


def _pair_from_coordinates(alg: LieAlgebra, v) -> GenDerivPair:
    n = alg.dim
    nn = n * n
    f = RationalMatrix([v[r * n:(r + 1) * n] for r in range(n)])
    g = RationalMatrix([v[nn + r * n: nn + (r + 1) * n] for r in range(n)])
    return GenDerivPair(f, g, alg)


def pair_parameter_names(tag: str, lam=None) -> tuple[str, ...]:
    if tag == "r3":
        return tuple(f"beta{i}" for i in range(1, 6))
    if tag == "r3lambda":
        k = 7 if Q(lam) == 1 else 5
        return tuple(f"beta{i}" for i in range(1, k + 1))
    if tag == "r2c":
        return tuple(f"beta{i}" for i in range(1, 6)) + ("gamma1", "gamma2", "gamma3")
    raise BadParameter(f"unknown algebra tag {tag!r}")


def pair_from_params(tag: str, lam=None, **params) -> GenDerivPair:
    """(f, g) in the closed form for ``tag``; omitted parameters are 0."""
    alg = catalog(tag, lam)
    names = pair_parameter_names(tag, alg.lam)
    unknown = set(params) - set(names)
    if unknown:
        raise BadParameter(f"parameters {sorted(unknown)} not used for {alg.label}; expected {names}")
    p = {k: ZERO for k in names}
    p.update({k: Q(v) for k, v in params.items()})
    b = [None] + [p.get(f"beta{i}", ZERO) for i in range(1, 8)]
    g_id = RationalMatrix.identity(3).scale(b[1])

    if tag == "r3":
        f = RationalMatrix.from_columns([[b[1], b[2], b[3]], [0, b[4], 0], [0, b[5], b[4]]])
        return GenDerivPair(f, g_id, alg)
    if tag == "r3lambda" and alg.lam != 1:
        f = RationalMatrix.from_columns([[b[1], b[2], b[3]], [0, b[4], 0], [0, 0, b[5]]])
        return GenDerivPair(f, g_id, alg)
    if tag == "r3lambda":
        f = RationalMatrix.from_columns([[b[1], b[2], b[3]], [0, b[4], b[6]], [0, b[7], b[5]]])
        return GenDerivPair(f, g_id, alg)
    g1, g2, g3 = p["gamma1"], p["gamma2"], p["gamma3"]
    f = RationalMatrix.from_columns([[b[1], b[2], b[3]], [0, b[4], 0], [0, 0, b[5]]])
    g = RationalMatrix.from_columns([[b[1], 0, g1], [0, b[1], g2], [0, 0, g3]])
    return GenDerivPair(f, g, alg)


def proposition_space(tag: str, lam=None) -> PairSpace:
    """Span of the closed form: one pair per unit parameter."""
    alg = catalog(tag, lam)
    names = pair_parameter_names(tag, alg.lam)
    return PairSpace(alg, tuple(pair_from_params(tag, lam, **{n: 1}) for n in names))


def same_span(a: PairSpace, b: PairSpace) -> bool:
    ma, mb = a.coordinate_matrix(), b.coordinate_matrix()
    r = rank(stack([ma, mb]))
    return rank(ma) == r == rank(mb)
