"""Random sampling for the orbit-soundness and separation checks.

Everything draws from an explicit ``random.Random`` so a seed fixes the run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import AffgebraError, BadParameter
from .exactnum import Q
from .genderiv import pair_from_params, pair_parameter_names
from .liecore import automorphisms, catalog
from .affine import Affgebra
from .isoclass import CanonicalForm, IsoMove, apply_iso, canonicalize, families_for, replay


def random_rational(rng: random.Random, bound: int = 10, nonzero: bool = False):
    """p/q with p in [-bound, bound] and q in [1, bound]."""
    while True:
        x = Q(rng.randint(-bound, bound), rng.randint(1, bound))
        if x != 0 or not nonzero:
            return x


def random_pair_affgebra(tag: str, lam, rng: random.Random, bound: int = 10) -> Affgebra:
    names = pair_parameter_names(tag, catalog(tag, lam).lam)
    pair = pair_from_params(tag, lam, **{n: random_rational(rng, bound) for n in names})
    return Affgebra(pair, tuple(random_rational(rng, bound) for _ in range(3)))


def random_move(tag: str, lam, rng: random.Random, bound: int = 5) -> IsoMove:
    fam = automorphisms(tag, lam)
    while True:
        values = {n: random_rational(rng, bound, nonzero=nz) for n, nz in fam.params}
        try:
            psi = fam(**values)
        except BadParameter:
            continue
        return IsoMove(psi, tuple(random_rational(rng, bound) for _ in range(3)))


def random_form(family, lam, rng: random.Random, bound: int = 10, attempts: int = 200):
    """Random admissible residual parameters, or None when none were found."""
    for _ in range(attempts):
        params = {p: random_rational(rng, bound) for p in family.params}
        if not family.violated(params, lam):
            return CanonicalForm(family.name, params, lam)
    return None


@dataclass
class TrialOutcome:
    family: str
    ok: bool
    got: str = ""
    expected: str = ""
    error: str = ""

    def to_json(self) -> dict:
        out = {"family": self.family, "ok": self.ok, "expected": self.expected, "got": self.got}
        if self.error:
            out["error"] = self.error
        return out


def orbit_trial(form: CanonicalForm, move: IsoMove) -> TrialOutcome:
    """Move the representative and check that canonicalization comes back."""
    rep = form.representative()
    X = apply_iso(rep, move)
    try:
        got, chain = canonicalize(X)
    except AffgebraError as exc:
        return TrialOutcome(form.family, False, "", form.label(), f"{type(exc).__name__}: {exc}")
    if replay(X, chain) != got.representative():
        return TrialOutcome(form.family, False, got.label(), form.label(), "replay mismatch")
    return TrialOutcome(form.family, got == form, got.label(), form.label())


@dataclass
class OrbitReport:
    tag: str
    lam: object
    seed: int
    trials: int
    per_family: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return len(self.failures)


def orbit_test(tag: str, lam, seed: int, trials: int, bound: int = 10) -> OrbitReport:
    """Round-robin over the families: random form, random move, canonicalize."""
    if trials < 1:
        raise BadParameter("trials must be >= 1")
    rng = random.Random(seed)
    fams = families_for(tag, lam)
    lam = catalog(tag, lam).lam
    report = OrbitReport(tag, lam, seed, trials)
    for fam in fams:
        report.per_family[fam.name] = {"trials": 0, "passed": 0}
    for i in range(trials):
        fam = fams[i % len(fams)]
        form = random_form(fam, lam, rng, bound)
        if form is None:
            continue
        outcome = orbit_trial(form, random_move(tag, lam, rng))
        stats = report.per_family[fam.name]
        stats["trials"] += 1
        stats["passed"] += outcome.ok
        if not outcome.ok:
            report.failures.append({"trial": i, **outcome.to_json()})
    return report
