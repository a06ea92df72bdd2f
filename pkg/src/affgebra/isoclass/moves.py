"""Isomorphisms between affgebras on one Lie algebra.

A move (psi, a) sends X(G; g, f, s) to

    g' = psi g psi^-1,   f' = psi (f - ad_a) psi^-1,   s' = psi (s + a - g a).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import DimensionMismatch, NotAutomorphism
from ..exactnum import Q, RationalMatrix, format_rational, inverse, vadd, vsub, zero_vector
from ..genderiv import GenDerivPair
from ..liecore import is_automorphism
from ..affine import Affgebra


@dataclass(frozen=True)
class IsoMove:
    psi: RationalMatrix
    a: tuple

    def __post_init__(self):
        n = self.psi.nrows
        if self.psi.shape != (n, n) or len(self.a) != n:
            raise DimensionMismatch("psi must be square and match the length of a")
        object.__setattr__(self, "a", tuple(Q(x) for x in self.a))

    @classmethod
    def identity(cls, n: int) -> IsoMove:
        return cls(RationalMatrix.identity(n), zero_vector(n))

    @classmethod
    def gauge(cls, a) -> IsoMove:
        return cls(RationalMatrix.identity(len(a)), tuple(a))

    def is_identity(self) -> bool:
        return self.psi == RationalMatrix.identity(self.psi.nrows) and not any(self.a)

    def to_json(self) -> dict:
        return {"psi": self.psi.to_json(), "a": [format_rational(x) for x in self.a]}

    @classmethod
    def from_json(cls, doc) -> IsoMove:
        return cls(RationalMatrix.from_json(doc["psi"]), tuple(Q(x) for x in doc["a"]))


def apply_iso(X: Affgebra, m: IsoMove, *, check: bool = True) -> Affgebra:
    alg = X.algebra
    if check and not is_automorphism(alg, m.psi):
        raise NotAutomorphism("psi does not preserve the bracket")
    psi, psi_inv = m.psi, inverse(m.psi)
    g2 = psi @ X.g @ psi_inv
    f2 = psi @ (X.f - alg.ad(m.a)) @ psi_inv
    s2 = psi @ vsub(vadd(X.s, m.a), X.g @ m.a)
    verified = None if X.verified else False
    return Affgebra(GenDerivPair(f2, g2, alg), s2, verified)


def compose(first: IsoMove, second: IsoMove) -> IsoMove:
    """The single move equal to applying ``first`` and then ``second``."""
    return IsoMove(second.psi @ first.psi, vadd(first.a, inverse(first.psi) @ second.a))


def compose_all(moves: Iterable[IsoMove], n: int = 3) -> IsoMove:
    out = IsoMove.identity(n)
    for m in moves:
        out = compose(out, m)
    return out


def replay(X: Affgebra, chain: Iterable[IsoMove]) -> Affgebra:
    for m in chain:
        X = apply_iso(X, m)
    return X
