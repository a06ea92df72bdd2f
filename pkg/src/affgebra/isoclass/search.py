"""Brute-force search for a move connecting two affgebras.

Automorphism parameters are drawn from a finite grid; for each candidate
psi the translation a is not searched but solved exactly from

    ad_a = f1 - psi^-1 f2 psi,      (I - g1) a = psi^-1 s2 - s1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import BadParameter
from ..exactnum import Q, RationalMatrix, inverse, solve, unit, vsub
from ..liecore import automorphisms, require_catalog
from ..affine import Affgebra
from .canonical import invariants
from .moves import IsoMove, apply_iso

DEFAULT_GRID = tuple(Q(x) for x in (-2, -1, 0, 1, 2))


@dataclass(frozen=True)
class SearchResult:
    move: IsoMove | None
    candidates: int
    reason: str  # "found", "invariants", "grid" or "budget"

    @property
    def found(self) -> bool:
        return self.move is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "reason": self.reason,
            "candidates": self.candidates,
            "move": None if self.move is None else self.move.to_json(),
        }


def _translation(X1: Affgebra, X2: Affgebra, psi: RationalMatrix):
    alg = X1.algebra
    n = alg.dim
    psi_inv = inverse(psi)
    target_f = X1.f - psi_inv @ X2.f @ psi
    target_s = vsub(psi_inv @ X2.s, X1.s)
    ads = [alg.ad(unit(n, i)) for i in range(n)]
    rows, rhs = [], []
    for r in range(n):
        for c in range(n):
            rows.append([ads[i][r, c] for i in range(n)])
            rhs.append(target_f[r, c])
    h = RationalMatrix.identity(n) - X1.g
    for r in range(n):
        rows.append(list(h.row(r)))
        rhs.append(target_s[r])
    return solve(RationalMatrix(rows), rhs)


def orbit_search(X1: Affgebra, X2: Affgebra, grid=DEFAULT_GRID, budget: int = 200_000,
                 use_invariants: bool = True) -> SearchResult:
    """Look for (psi, a) with apply_iso(X1, (psi, a)) == X2.

    Failure is evidence of non-isomorphism, not proof, unless the reason
    is ``"invariants"``.
    """
    tag1, lam1 = require_catalog(X1.algebra)
    tag2, lam2 = require_catalog(X2.algebra)
    if (tag1, lam1) != (tag2, lam2):
        raise BadParameter("orbit_search needs two affgebras on the same algebra")
    if use_invariants and invariants(X1) != invariants(X2):
        return SearchResult(None, 0, "invariants")
    fam = automorphisms(tag1, lam1)
    grid = tuple(Q(x) for x in grid)
    choices = [tuple(x for x in grid if x != 0) if nz else grid for _, nz in fam.params]
    tried = 0
    for values in itertools.product(*choices):
        if tried >= budget:
            return SearchResult(None, tried, "budget")
        try:
            psi = fam(**dict(zip(fam.names, values)))
        except BadParameter:
            continue
        tried += 1
        psi_inv = inverse(psi)
        if psi @ X1.g @ psi_inv != X2.g:
            continue
        a = _translation(X1, X2, psi)
        if a is None:
            continue
        move = IsoMove(psi, a)
        if apply_iso(X1, move) == X2:
            return SearchResult(move, tried, "found")
    return SearchResult(None, tried, "grid")
