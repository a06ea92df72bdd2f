import itertools
import json

import pytest
from hypothesis import given

from affgebra.errors import BadParameter, DimensionMismatch, NotCatalogAlgebra
from affgebra.exactnum import Q, RationalMatrix
from affgebra.liecore import (
    LieAlgebra,
    automorphisms,
    catalog,
    identify,
    is_automorphism,
    require_catalog,
    validate,
)

from strategies import ALGEBRAS, moves, vectors

# dimension of the derivation algebra (the Lie algebra of Aut), from sympy
DER_DIM = {("r3", None): 4, ("r3lambda", Q(1, 2)): 4, ("r3lambda", Q(1)): 6, ("r2c", None): 4}


def test_catalog_brackets():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    r3 = catalog("r3")
    assert r3.bracket(e1, e2) == e2
    assert r3.bracket(e1, e3) == (0, 1, 1)
    assert r3.bracket(e2, e3) == (0, 0, 0)
    r = catalog("r3lambda", "3/2")
    assert r.bracket(e1, e3) == (0, 0, Q(3, 2))
    assert r.bracket(e3, e1) == (0, 0, Q(-3, 2))
    assert catalog("r2c").bracket(e1, e3) == (0, 0, 0)


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_catalog_validates(tag, lam):
    alg = catalog(tag, lam)
    assert validate(alg) is None
    assert alg.validate() is None


def test_catalog_rejections():
    with pytest.raises(BadParameter):
        catalog("r3lambda", 0)
    with pytest.raises(BadParameter):
        catalog("r3lambda")
    with pytest.raises(BadParameter):
        catalog("so3")


def test_validate_finds_jacobi_failure():
    # antisymmetric but not Lie: [e1,e2]=e3, [e2,e3]=e2, [e1,e3]=0
    bad = LieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1), (1, 2): (0, 1, 0)})
    v = validate(bad)
    assert v is not None and v.kind == "jacobi"


def test_validate_finds_antisymmetry_failure():
    c = [[[Q(0)] * 2 for _ in range(2)] for _ in range(2)]
    c[0][0][1] = Q(1)
    alg = LieAlgebra(2, tuple(tuple(tuple(x) for x in ci) for ci in c))
    assert validate(alg).kind == "antisymmetry"


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        catalog("r3").bracket((1, 0), (0, 1, 0))
    with pytest.raises(DimensionMismatch):
        LieAlgebra.from_brackets(3, {(0, 1): (0, 1)})


def test_ad_columns():
    alg = catalog("r3")
    ad = alg.ad((0, 0, 1))
    # ad_{e3}(e1) = -(e2 + e3)
    assert ad.col(0) == (0, -1, -1)
    assert ad.col(1) == (0, 0, 0)


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_json_roundtrip_identifies(tag, lam):
    alg = catalog(tag, lam)
    doc = json.loads(json.dumps(alg.to_json()))
    del doc["tag"], doc["lambda"]
    back = LieAlgebra.from_json(doc)
    assert back == alg
    assert require_catalog(back) == (tag, alg.lam)


def test_from_json_short_forms():
    assert LieAlgebra.from_json("r2c") == catalog("r2c")
    assert LieAlgebra.from_json({"tag": "r3lambda", "lambda": "1/2"}).lam == Q(1, 2)
    with pytest.raises(ValueError):
        LieAlgebra.from_json({"dim": 3, "brackets": [{"i": 2, "j": 1, "result": [0, 0, 0]}]})


def test_identify_rejects_other_algebras():
    with pytest.raises(NotCatalogAlgebra):
        identify(LieAlgebra.abelian(3))


@pytest.mark.parametrize("tag,lam", list(DER_DIM))
def test_family_has_full_dimension(tag, lam):
    assert len(automorphisms(tag, lam).params) == DER_DIM[(tag, lam)]


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_family_members_are_automorphisms(tag, lam):
    fam = automorphisms(tag, lam)
    alg = catalog(tag, lam)
    assert is_automorphism(alg, fam())
    assert fam() == RationalMatrix.identity(3)


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_random_members_are_automorphisms(tag, lam):
    @given(moves(tag, lam))
    def check(m):
        assert is_automorphism(catalog(tag, lam), m.psi)

    check()


def test_family_rejects_bad_values():
    with pytest.raises(BadParameter):
        automorphisms("r3")(alpha4=0)
    with pytest.raises(BadParameter):
        automorphisms("r3lambda", 1)(alpha3=1, alpha4=1, alpha5=1, alpha6=1)
    with pytest.raises(BadParameter):
        automorphisms("r2c")(alpha9=1)


def _family_params(tag, lam, psi):
    p = {"alpha1": psi[1, 0], "alpha2": psi[2, 0]}
    if tag == "r3":
        p |= {"alpha3": psi[1, 2], "alpha4": psi[1, 1]}
    elif tag == "r3lambda" and lam == 1:
        p |= {"alpha3": psi[1, 1], "alpha4": psi[2, 2], "alpha5": psi[2, 1], "alpha6": psi[1, 2]}
    else:
        p |= {"alpha3": psi[1, 1], "alpha4": psi[2, 2]}
    return p


def _grid_automorphisms(tag, lam):
    alg = catalog(tag, lam)
    for entries in itertools.product((-1, 0, 1), repeat=9):
        psi = RationalMatrix([entries[0:3], entries[3:6], entries[6:9]])
        if is_automorphism(alg, psi):
            yield psi


def _in_family(tag, lam, psi):
    try:
        return automorphisms(tag, lam)(**_family_params(tag, lam, psi)) == psi
    except BadParameter:
        return False


@pytest.mark.parametrize("tag,lam", [("r3", None), ("r3lambda", Q(2)), ("r3lambda", Q(1)),
                                     ("r2c", None)])
def test_family_covers_small_automorphisms(tag, lam):
    found = list(_grid_automorphisms(tag, lam))
    assert found
    assert all(_in_family(tag, lam, psi) for psi in found)


def test_minus_one_has_automorphisms_outside_the_family():
    # e1 -> -e1 with e2 <-> e3 preserves r3(-1); the family only has psi(e1) = e1 + ...
    outside = [psi for psi in _grid_automorphisms("r3lambda", -1)
               if not _in_family("r3lambda", Q(-1), psi)]
    assert outside
    assert all(psi[0, 0] == -1 for psi in outside)
    swap = RationalMatrix([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert swap in outside


@given(vectors(), vectors())
def test_bracket_antisymmetric(x, y):
    alg = catalog("r3")
    assert alg.bracket(x, y) == tuple(-v for v in alg.bracket(y, x))
