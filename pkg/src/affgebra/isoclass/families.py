"""Registry of canonical families.

Each family stores its residual parameters, a template tuple of
expressions (one per slot of the reduced datum), and its side conditions.
``printed`` conditions belong to the classification list itself;
``derived`` ones describe where the canonicalizer actually emits the
family (they follow from the case tree) and ``derived_lambda1`` applies
only on r3(1).  The table renderer and the representative builder read the
same strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BadParameter
from ..exactnum import Q, format_rational
from ..genderiv import pair_from_params
from ..liecore import catalog
from ..affine import Affgebra
from . import expr

SLOTS_5 = {
    "F": ("beta1", "beta4", "N1", "N2", "N3"),
    "H": ("beta1", "beta5", "N1", "N2", "N3"),
    "K": ("beta1", "beta6", "N1", "N2", "N3"),
}
SLOTS_L = ("beta1", "beta3", "beta5", "gamma1", "gamma2", "gamma3", "N1", "N2", "N3")

P0 = "beta1*(1-beta1)"


@dataclass(frozen=True)
class Family:
    name: str
    tag: str
    params: tuple
    template: tuple
    printed: tuple = ()
    derived: tuple = ()
    derived_lambda1: tuple = ()
    lambda1_only: bool = False

    @property
    def kind(self) -> str:
        return self.name[0]

    @property
    def slots(self) -> tuple:
        return SLOTS_L if self.kind == "L" else SLOTS_5[self.kind]

    def env(self, params: dict, lam=None) -> dict:
        missing = set(self.params) - set(params)
        extra = set(params) - set(self.params)
        if missing or extra:
            raise BadParameter(
                f"{self.name} takes parameters {self.params}; got {sorted(params)}"
            )
        env = {k: Q(v) for k, v in params.items()}
        env["lam"] = None if lam is None else Q(lam)
        return env

    def slot_values(self, params: dict, lam=None) -> dict:
        env = self.env(params, lam)
        return {s: expr.evaluate(t, env) for s, t in zip(self.slots, self.template)}

    def conditions(self, lam=None) -> tuple:
        conds = self.printed + self.derived
        if lam is not None and Q(lam) == 1:
            conds += self.derived_lambda1
        return conds

    def violated(self, params: dict, lam=None) -> list[str]:
        env = self.env(params, lam)
        return [c for c in self.conditions(lam) if not expr.evaluate(c, env)]

    def representative(self, params: dict, lam=None) -> Affgebra:
        v = self.slot_values(params, lam)
        s = (v["N1"], v["N2"], v["N3"])
        if self.kind == "F":
            pair = pair_from_params("r3", beta1=v["beta1"], beta4=v["beta4"])
        elif self.kind == "H":
            pair = pair_from_params("r3lambda", lam, beta1=v["beta1"], beta5=v["beta5"])
        elif self.kind == "K":
            pair = pair_from_params("r3lambda", lam, beta1=v["beta1"], beta6=v["beta6"])
        else:
            pair = pair_from_params(
                "r2c", None,
                **{k: v[k] for k in ("beta1", "beta3", "beta5", "gamma1", "gamma2", "gamma3")},
            )
        return Affgebra(pair, s)

    def label(self, params: dict | None = None, lam=None) -> str:
        if params is None:
            return f"{self.name}({', '.join(expr.render(t) for t in self.template)})"
        vals = self.slot_values(params, lam)
        return f"{self.name}({', '.join(format_rational(vals[s]) for s in self.slots)})"


def _f(name, params, template, **kw):
    return Family(name, "r3", params, template, **kw)


def _h(name, params, template, **kw):
    return Family(name, "r3lambda", params, template, **kw)


def _l(name, params, template, **kw):
    return Family(name, "r2c", params, tuple(template.split()), **kw)


B5_NE_B1 = ("beta5 != beta1",)

FAMILIES = (
    _f("F1", ("beta1", "beta4", "N1"), ("beta1", "beta4", "N1", "0", "0")),
    _f("F2", ("beta1", "beta4"), ("beta1", "beta4", "(beta1-beta4)*(1-beta1)", "0", "1")),
    _f("F3", ("beta1",), ("beta1", "beta1", "0", "1", "0")),
    _f("F4", ("beta4",), ("1", "beta4", "0", "1", "0"), printed=("beta4 != 1",)),
    _h("H1", ("beta1", "beta5", "N1"), ("beta1", "beta5", "N1", "0", "0"),
       derived_lambda1=("beta5 >= 0",)),
    _h("H2", ("beta1", "beta5"), ("beta1", "beta5", P0, "1", "0"),
       derived_lambda1=("beta5 >= 0",)),
    _h("H3", ("beta1", "beta5"), ("beta1", "beta5", "(beta1-beta5)*(1-beta1)/lam", "0", "1"),
       derived_lambda1=("beta5 > 0",)),
    _h("H4", ("beta5",), ("1", "beta5", "0", "1", "1"), printed=("beta5 != 1-lam",),
       derived_lambda1=("beta5 > 0",)),
    _h("H5", ("beta1",), ("beta1", "beta1*(1-lam)", P0, "1", "1")),
    _h("K1", ("beta1", "N1"), ("beta1", "1", "N1", "0", "0"), lambda1_only=True),
    _h("K2", ("beta1",), ("beta1", "1", P0, "1", "0"), lambda1_only=True),
    _h("K3", (), ("1", "1", "0", "0", "1"), lambda1_only=True),
    _l("L1", ("beta1", "beta5", "gamma3", "N1"), "beta1 0 beta5 0 1 gamma3 N1 0 0"),
    _l("L2", ("beta1", "beta5", "gamma3", "N1"), "beta1 0 beta5 0 1 gamma3 N1 1 0",
       derived=(f"not (beta5 == beta1 and gamma3 != 1 and gamma3 != beta1 and N1 != {P0})",)),
    _l("L3", ("beta1", "beta5", "N1", "N2"), "beta1 0 beta5 0 1 1 N1 N2 1", derived=B5_NE_B1),
    _l("L4", ("beta1", "beta5", "gamma3", "N1"), "beta1 0 beta5 0 0 gamma3 N1 0 0"),
    _l("L5", ("beta1", "beta5", "gamma3", "N1"), "beta1 0 beta5 1 0 gamma3 N1 0 0",
       derived=B5_NE_B1),
    _l("L6", ("beta1", "beta5", "gamma1", "N1"), "beta1 0 beta5 gamma1 0 1 N1 0 1",
       derived=B5_NE_B1),
    _l("L7", ("beta1", "beta5", "gamma3"), f"beta1 0 beta5 0 0 gamma3 {P0} 1 0"),
    _l("L8", ("beta1", "beta5", "gamma3"), f"beta1 0 beta5 1 0 gamma3 {P0} 1 0",
       derived=B5_NE_B1),
    _l("L9", ("beta1", "beta5", "gamma1"), f"beta1 0 beta5 gamma1 0 1 {P0} 1 1",
       derived=B5_NE_B1),
    _l("L10", ("beta1", "gamma3", "N1"), "beta1 1 beta1 0 1 gamma3 N1 0 0",
       derived=("gamma3 != 1", "gamma3 != beta1", f"N1 != {P0}")),
    _l("L11", ("beta1", "N1", "N2"), "beta1 1 beta1 0 1 beta1 N1 N2 0", printed=("beta1 != 1",)),
    _l("L12", ("beta1", "gamma3", "N2"), f"beta1 1 beta1 0 1 gamma3 {P0} N2 0",
       printed=("gamma3 != 1",), derived=("gamma3 != beta1",)),
    _l("L13", ("beta1", "N1", "N2"), "beta1 1 beta1 0 1 1 N1 N2 0"),
    _l("L14", ("beta1", "beta3", "N2"), f"beta1 beta3 beta1 0 1 1 {P0} N2 1"),
    _l("L15", ("beta1", "gamma3", "N1"), "beta1 1 beta1 0 0 gamma3 N1 0 0"),
    _l("L16", ("beta1", "beta3", "N1"), "beta1 beta3 beta1 1 0 beta1 N1 0 0",
       printed=("beta1 != 1",)),
    _l("L17", ("beta1", "beta3", "N1"), "beta1 beta3 beta1 1 0 1 N1 0 0",
       derived=("N1 != 0", f"N1 != {P0}")),
    _l("L18", ("beta1", "beta3"), "beta1 beta3 beta1 0 0 1 0 0 1",
       derived=("beta1 != 0", "beta1 != 1")),
    _l("L19", ("beta1", "gamma3"), f"beta1 1 beta1 0 0 gamma3 {P0} 1 0"),
    _l("L20", ("beta1", "beta3"), f"beta1 beta3 beta1 1 0 beta1 {P0} 1 0",
       printed=("beta1 != 1",)),
    _l("L21", ("beta1", "beta3"), f"beta1 beta3 beta1 0 0 1 {P0} 0 1"),
    _l("L22", ("beta1", "beta3"), f"beta1 beta3 beta1 0 0 1 {P0} 1 1"),
    _l("L23", ("beta3", "N3"), "1 beta3 1 1 0 1 0 0 N3"),
    _l("L24", ("beta3", "N3"), "1 beta3 1 1 0 1 0 1 N3"),
)

REGISTRY = {fam.name: fam for fam in FAMILIES}

# Identifications inside the lists, as (lambda condition, text).
NOTES = {
    "r3lambda": (
        ("lam == 1", "H2(β1, 0, β1(1 − β1), 1, 0) ≅ H3(β1, 0, β1(1 − β1), 0, 1)"),
        ("lam == 1", "H5(β1, 0, β1(1 − β1), 1, 1) ≅ H2(β1, 0, β1(1 − β1), 1, 0); "
                     "the canonicalizer emits H2"),
        ("lam == 1", "H(β1, β5, N1, N2, N3) ≅ H(β1, −β5, N1 + (1 − β1)β5, N3, N2); "
                     "the canonicalizer keeps β5 ≥ 0"),
    ),
}


def families_for(tag: str, lam=None) -> tuple[Family, ...]:
    alg = catalog(tag, lam)
    lam1 = alg.lam is not None and alg.lam == 1
    return tuple(
        fam for fam in FAMILIES if fam.tag == tag and (lam1 or not fam.lambda1_only)
    )


def notes_for(tag: str, lam=None) -> tuple[str, ...]:
    alg = catalog(tag, lam)
    env = {"lam": alg.lam}
    return tuple(text for cond, text in NOTES.get(tag, ()) if expr.evaluate(cond, env))


@dataclass(frozen=True)
class CanonicalForm:
    family: str
    params: dict = field(hash=False)
    lam: object = None

    def __post_init__(self):
        if self.family not in REGISTRY:
            raise BadParameter(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", {k: Q(v) for k, v in self.params.items()})
        if self.lam is not None:
            object.__setattr__(self, "lam", Q(self.lam))
        REGISTRY[self.family].env(self.params, self.lam)

    @property
    def definition(self) -> Family:
        return REGISTRY[self.family]

    def key(self) -> tuple:
        return (self.family, self.lam, tuple(sorted(self.params.items())))

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def representative(self) -> Affgebra:
        return self.definition.representative(self.params, self.lam)

    def violated_conditions(self) -> list[str]:
        return self.definition.violated(self.params, self.lam)

    def label(self) -> str:
        return self.definition.label(self.params, self.lam)

    def to_json(self) -> dict:
        fam = self.definition
        return {
            "family": self.family,
            "lambda": None if self.lam is None else format_rational(self.lam),
            "params": {k: format_rational(self.params[k]) for k in fam.params},
        }

    @classmethod
    def from_json(cls, doc) -> CanonicalForm:
        lam = doc.get("lambda")
        return cls(doc["family"], {k: Q(v) for k, v in doc["params"].items()},
                   None if lam is None else Q(lam))


__all__ = [
    "CanonicalForm", "FAMILIES", "Family", "NOTES", "REGISTRY", "families_for", "notes_for",
]
