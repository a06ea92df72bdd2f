"""Lie algebras given by structure constants, plus the three catalog algebras.

Basis indices are 0-based in code and 1-based in every JSON document.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import BadParameter, DimensionMismatch, NotCatalogAlgebra
from .exactnum import (
    ONE,
    ZERO,
    Q,
    RationalMatrix,
    format_rational,
    det,
    unit,
)

TAGS = ("r3", "r3lambda", "r2c")


@dataclass(frozen=True)
class Violation:
    """First failing instance of an identity, with 1-based basis indices."""

    kind: str
    where: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """``constants[i][j][k]`` is the coefficient of e_k in [e_i, e_j]."""

    dim: int
    constants: tuple
    tag: str | None = None
    lam: object = None
    _nonzero: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        c = self.constants
        if len(c) != self.dim or any(len(ci) != self.dim for ci in c) or any(
            len(cij) != self.dim for ci in c for cij in ci
        ):
            raise DimensionMismatch("structure constants must be dim x dim x dim")
        nz = tuple(
            (i, j, k, c[i][j][k])
            for i in range(self.dim)
            for j in range(self.dim)
            for k in range(self.dim)
            if c[i][j][k] != 0
        )
        object.__setattr__(self, "_nonzero", nz)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.constants == other.constants

    def __hash__(self):
        return hash(self.constants)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, *, tag=None, lam=None) -> LieAlgebra:
        """Build from ``{(i, j): vector}`` with 0-based i < j; antisymmetry is implied."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            if len(v) != dim:
                raise DimensionMismatch(f"bracket [e{i + 1},e{j + 1}] has length {len(v)}")
            for k, x in enumerate(v):
                x = Q(x)
                c[i][j][k] = x
                c[j][i][k] = -x
        return cls(dim, _freeze(c), tag=tag, lam=None if lam is None else Q(lam))

    @classmethod
    def abelian(cls, dim: int) -> LieAlgebra:
        return cls.from_brackets(dim, {})

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} in dim {self.dim}")
        out = [ZERO] * self.dim
        for i, j, k, c in self._nonzero:
            xi, yj = x[i], y[j]
            if xi and yj:
                out[k] += c * xi * yj
        return tuple(out)

    def ad(self, a: Sequence) -> RationalMatrix:
        """Matrix of x -> [a, x]."""
        if len(a) != self.dim:
            raise DimensionMismatch(f"vector of length {len(a)} in dim {self.dim}")
        cols = [self.bracket(a, unit(self.dim, j)) for j in range(self.dim)]
        return RationalMatrix.from_columns(cols)

    def validate(self) -> Violation | None:
        return validate(self)

    @property
    def label(self) -> str:
        if self.tag == "r3lambda":
            return f"r3({format_rational(self.lam)})"
        return self.tag or f"lie{self.dim}"

    def to_json(self) -> dict:
        doc = {
            "dim": self.dim,
            "brackets": [
                {"i": i + 1, "j": j + 1, "result": [format_rational(v) for v in self.constants[i][j]]}
                for i in range(self.dim)
                for j in range(i + 1, self.dim)
                if any(v != 0 for v in self.constants[i][j])
            ],
        }
        if self.tag is not None:
            doc["tag"] = self.tag
            doc["lambda"] = None if self.lam is None else format_rational(self.lam)
        return doc

    @classmethod
    def from_json(cls, doc) -> LieAlgebra:
        """Accepts a bare tag string, ``{"tag", "lambda"}``, or ``{"dim", "brackets"}``."""
        if isinstance(doc, str):
            return catalog(doc)
        if not isinstance(doc, dict):
            raise ValueError("algebra must be a tag string or an object")
        if "brackets" not in doc:
            lam = doc.get("lambda")
            return catalog(doc["tag"], None if lam is None else Q(lam))
        dim = int(doc["dim"])
        brackets = {}
        for b in doc["brackets"]:
            i, j = int(b["i"]) - 1, int(b["j"]) - 1
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket indices must satisfy 1 <= i < j <= dim, got ({i + 1}, {j + 1})")
            brackets[(i, j)] = [Q(v) for v in b["result"]]
        alg = cls.from_brackets(dim, brackets)
        try:
            return identify(alg)
        except NotCatalogAlgebra:
            return alg


def _freeze(c) -> tuple:
    return tuple(tuple(tuple(cij) for cij in ci) for ci in c)


def validate(alg: LieAlgebra) -> Violation | None:
    """Antisymmetry on all (i, j, k), then Jacobi on all basis triples."""
    n, c = alg.dim, alg.constants
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    return Violation("antisymmetry", (i + 1, j + 1), f"component e{k + 1}")
    e = [unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                t1 = alg.bracket(e[i], alg.bracket(e[j], e[k]))
                t2 = alg.bracket(e[j], alg.bracket(e[k], e[i]))
                t3 = alg.bracket(e[k], alg.bracket(e[i], e[j]))
                if any(a + b + d != 0 for a, b, d in zip(t1, t2, t3)):
                    return Violation("jacobi", (i + 1, j + 1, k + 1))
    return None


def bracket(alg: LieAlgebra, x, y) -> tuple:
    return alg.bracket(x, y)


def ad(alg: LieAlgebra, a) -> RationalMatrix:
    return alg.ad(a)


def catalog(tag: str, lam=None) -> LieAlgebra:
    """The three non-nilpotent solvable 3-dim algebras:

    r3:        [e1,e2] = e2, [e1,e3] = e2 + e3
    r3lambda:  [e1,e2] = e2, [e1,e3] = lam e3   (lam != 0)
    r2c:       [e1,e2] = e2
    """
    if tag == "r3":
        return LieAlgebra.from_brackets(3, {(0, 1): (0, 1, 0), (0, 2): (0, 1, 1)}, tag="r3")
    if tag == "r3lambda":
        if lam is None:
            raise BadParameter("r3lambda needs lambda")
        lam = Q(lam)
        if lam == 0:
            raise BadParameter("lambda must be nonzero")
        return LieAlgebra.from_brackets(
            3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, lam)}, tag="r3lambda", lam=lam
        )
    if tag == "r2c":
        return LieAlgebra.from_brackets(3, {(0, 1): (0, 1, 0)}, tag="r2c")
    raise BadParameter(f"unknown algebra tag {tag!r}; expected one of {TAGS}")


def identify(alg: LieAlgebra) -> LieAlgebra:
    """Return the catalog algebra with identical structure constants, tagged."""
    if alg.tag in TAGS:
        return alg
    if alg.dim == 3:
        lam = alg.constants[0][2][2]
        candidates = [catalog("r3"), catalog("r2c")]
        if lam != 0:
            candidates.append(catalog("r3lambda", lam))
        for cand in candidates:
            if cand.constants == alg.constants:
                return cand
    raise NotCatalogAlgebra("structure constants do not match r3, r3(lambda) or r2+C")


def require_catalog(alg: LieAlgebra) -> tuple[str, object]:
    alg = identify(alg)
    return alg.tag, alg.lam


def is_automorphism(alg: LieAlgebra, psi: RationalMatrix) -> bool:
    """Invertible and psi[e_i, e_j] = [psi e_i, psi e_j] on all basis pairs."""
    n = alg.dim
    if psi.shape != (n, n) or det(psi) == 0:
        return False
    cols = psi.columns()
    for i in range(n):
        for j in range(i + 1, n):
            lhs = psi @ alg.constants[i][j]
            if lhs != alg.bracket(cols[i], cols[j]):
                return False
    return True


@dataclass(frozen=True)
class AutomorphismFamily:
    """Hard-coded parametrized automorphisms of one catalog algebra.

    ``params`` lists ``(name, must_be_nonzero)``; ``build`` maps a full
    assignment to the matrix.  Parameters omitted in :meth:`__call__`
    default to the identity element (0 for free, 1 for nonzero ones).
    """

    tag: str
    lam: object
    params: tuple
    build: Callable[[dict], RationalMatrix] = field(repr=False)
    condition: Callable[[dict], bool] | None = field(default=None, repr=False)
    condition_text: str = ""

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.params)

    def defaults(self) -> dict:
        ident = {"alpha3", "alpha4"} if self.tag != "r3" else {"alpha4"}
        return {p: (ONE if p in ident else ZERO) for p, _ in self.params}

    def __call__(self, **values) -> RationalMatrix:
        unknown = set(values) - set(self.names)
        if unknown:
            raise BadParameter(f"unknown automorphism parameters {sorted(unknown)}")
        full = self.defaults()
        full.update({k: Q(v) for k, v in values.items()})
        for name, nonzero in self.params:
            if nonzero and full[name] == 0:
                raise BadParameter(f"{name} must be nonzero")
        if self.condition is not None and not self.condition(full):
            raise BadParameter(f"automorphism condition violated: {self.condition_text}")
        return self.build(full)


def automorphisms(tag: str, lam=None) -> AutomorphismFamily:
    """Psi(e1) = e1 + a1 e2 + a2 e3 in every case; the (e2, e3) block varies."""
    alg = catalog(tag, lam)
    lam = alg.lam

    def head(p):
        return [ONE, p["alpha1"], p["alpha2"]]

    if tag == "r3":
        # Psi(e2) = a4 e2, Psi(e3) = a3 e2 + a4 e3
        return AutomorphismFamily(
            "r3", None,
            (("alpha1", False), ("alpha2", False), ("alpha3", False), ("alpha4", True)),
            lambda p: RationalMatrix.from_columns(
                [head(p), [0, p["alpha4"], 0], [0, p["alpha3"], p["alpha4"]]]
            ),
        )
    if tag == "r3lambda" and lam != 1:
        return AutomorphismFamily(
            "r3lambda", lam,
            (("alpha1", False), ("alpha2", False), ("alpha3", True), ("alpha4", True)),
            lambda p: RationalMatrix.from_columns(
                [head(p), [0, p["alpha3"], 0], [0, 0, p["alpha4"]]]
            ),
        )
    if tag == "r3lambda":
        # lam = 1: Psi(e2) = a3 e2 + a5 e3, Psi(e3) = a6 e2 + a4 e3
        return AutomorphismFamily(
            "r3lambda", lam,
            tuple((f"alpha{i}", False) for i in range(1, 7)),
            lambda p: RationalMatrix.from_columns(
                [head(p), [0, p["alpha3"], p["alpha5"]], [0, p["alpha6"], p["alpha4"]]]
            ),
            condition=lambda p: p["alpha3"] * p["alpha4"] - p["alpha5"] * p["alpha6"] != 0,
            condition_text="alpha3*alpha4 - alpha5*alpha6 != 0",
        )
    # r2c: Psi(e2) = a3 e2, Psi(e3) = a4 e3 (e3 spans the centre)
    return AutomorphismFamily(
        "r2c", None,
        (("alpha1", False), ("alpha2", False), ("alpha3", True), ("alpha4", True)),
        lambda p: RationalMatrix.from_columns(
            [head(p), [0, p["alpha3"], 0], [0, 0, p["alpha4"]]]
        ),
    )
