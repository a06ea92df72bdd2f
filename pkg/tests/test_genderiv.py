import json

import pytest
from hypothesis import given, strategies as st

from affgebra.errors import BadParameter, DimensionMismatch
from affgebra.exactnum import Q, RationalMatrix, nullspace, unit
from affgebra.genderiv import (
    GenDerivPair,
    PairSpace,
    pair_from_params,
    pair_parameter_names,
    pair_system,
    proposition_space,
    same_span,
    solve_pairs,
    verify_pair,
)
from affgebra.liecore import LieAlgebra, catalog

from strategies import ALGEBRAS, matrices, rationals

EXPECTED_DIM = {
    ("r3", None): 5,
    ("r3lambda", Q(1, 2)): 5,
    ("r3lambda", Q(2)): 5,
    ("r3lambda", Q(-1)): 5,
    ("r3lambda", Q(1)): 7,
    ("r2c", None): 8,
}


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_dimension(tag, lam):
    assert solve_pairs(catalog(tag, lam)).dimension == EXPECTED_DIM[(tag, lam)]


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_closed_form_spans_solutions(tag, lam):
    space = solve_pairs(catalog(tag, lam))
    prop = proposition_space(tag, lam)
    assert prop.dimension == len(pair_parameter_names(tag, catalog(tag, lam).lam))
    assert same_span(space, prop)


def test_abelian_everything_is_a_pair():
    assert solve_pairs(LieAlgebra.abelian(3)).dimension == 18


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_basis_pairs_verify(tag, lam):
    for p in solve_pairs(catalog(tag, lam)).basis:
        assert verify_pair(p) is None


def _upper_pairs_only(alg):
    """Same system with only i < j rows (drops the diagonal and i > j)."""
    n = alg.dim
    full = pair_system(alg)
    # rows are ordered (i, j, k) over all ordered pairs
    keep = [r for r in range(full.nrows) if (r // n) // n < (r // n) % n]
    return RationalMatrix([full.row(r) for r in keep])


def test_diagonal_pairs_are_needed():
    # because of the g term the identity is not antisymmetric in (a, b)
    alg = catalog("r3")
    loose = nullspace(_upper_pairs_only(alg))
    assert len(loose) == 11
    bad = [v for v in loose if verify_pair(_as_pair(alg, v.col(0))) is not None]
    assert bad


def _as_pair(alg, v):
    return GenDerivPair(RationalMatrix([v[0:3], v[3:6], v[6:9]]),
                        RationalMatrix([v[9:12], v[12:15], v[15:18]]), alg)


def test_g_only_pair_fails_on_diagonal():
    # f = 0, g(e3) = e2: the (e1, e3) instance leaves -[e1, e2] = -e2
    alg = catalog("r3lambda", 2)
    g = RationalMatrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    v = verify_pair(GenDerivPair(RationalMatrix.zeros(3, 3), g, alg))
    assert v is not None and v.where == (1, 3)


@pytest.mark.parametrize("tag,lam", ALGEBRAS)
def test_random_closed_form_pairs_verify(tag, lam):
    names = pair_parameter_names(tag, catalog(tag, lam).lam)

    @given(st.tuples(*[rationals() for _ in names]))
    def check(vals):
        assert verify_pair(pair_from_params(tag, lam, **dict(zip(names, vals)))) is None

    check()


@given(matrices(), matrices())
def test_membership_agrees_with_verify(f, g):
    alg = catalog("r2c")
    p = GenDerivPair(f, g, alg)
    assert (verify_pair(p) is None) == solve_pairs(alg).contains(p)


def test_pair_from_params_errors():
    with pytest.raises(BadParameter):
        pair_from_params("r3", beta6=1)
    with pytest.raises(BadParameter):
        pair_from_params("r3lambda", 2, beta7=1)
    assert pair_from_params("r3lambda", 1, beta7=1).f[1, 2] == 1


def test_pair_shape_checked():
    with pytest.raises(DimensionMismatch):
        GenDerivPair(RationalMatrix.identity(2), RationalMatrix.identity(3), catalog("r3"))


def test_pair_space_json_roundtrip():
    space = solve_pairs(catalog("r3lambda", "1/2"))
    back = PairSpace.from_json(json.loads(json.dumps(space.to_json())))
    assert back == space
    doc = space.to_json()
    doc["dimension"] = 4
    with pytest.raises(ValueError):
        PairSpace.from_json(doc)


def test_nullspace_basis_is_deterministic():
    a = solve_pairs(catalog("r3")).to_json()
    b = solve_pairs(catalog("r3")).to_json()
    assert a == b
    first = a["basis"][0]
    assert [e for row in first["f"] for e in row].count("1") >= 1


def test_unit_coordinates():
    p = pair_from_params("r3", beta1=1)
    assert p.coordinates()[:9] == (1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert p.coordinates()[9:] == tuple(RationalMatrix.identity(3).entries)
    assert unit(3, 0) == (1, 0, 0)
