"""Hypothesis strategies shared by the test modules."""

from hypothesis import assume, strategies as st

from affgebra.exactnum import Q, RationalMatrix
from affgebra.genderiv import pair_from_params, pair_parameter_names
from affgebra.affine import Affgebra
from affgebra.liecore import automorphisms, catalog
from affgebra.isoclass import IsoMove

ALGEBRAS = [("r3", None), ("r3lambda", Q(1, 2)), ("r3lambda", Q(2)), ("r3lambda", Q(-1)),
            ("r3lambda", Q(1)), ("r2c", None)]


@st.composite
def rationals(draw, bound=10, nonzero=False):
    p = draw(st.integers(-bound, bound).filter(lambda x: x != 0 or not nonzero))
    q = draw(st.integers(1, bound))
    return Q(p, q)


def vectors(n=3, bound=10):
    return st.tuples(*[rationals(bound) for _ in range(n)])


@st.composite
def matrices(draw, n=3, m=None, bound=10):
    m = n if m is None else m
    return RationalMatrix([[draw(rationals(bound)) for _ in range(m)] for _ in range(n)])


@st.composite
def affgebras(draw, tag, lam=None, bound=10):
    names = pair_parameter_names(tag, catalog(tag, lam).lam)
    pair = pair_from_params(tag, lam, **{n: draw(rationals(bound)) for n in names})
    return Affgebra(pair, draw(vectors(3, bound)))


@st.composite
def moves(draw, tag, lam=None, bound=5):
    fam = automorphisms(tag, lam)
    values = {n: draw(rationals(bound, nonzero=nz)) for n, nz in fam.params}
    if fam.condition is not None:
        assume(fam.condition({**fam.defaults(), **values}))
    return IsoMove(fam(**values), draw(vectors(3, bound)))


@st.composite
def solvable_affgebras(draw, tag, lam=None, bound=10):
    """Like ``affgebras`` but, on r3(1), with a rationally triangularizable
    (e2, e3) block: a triangular block moved by a random automorphism."""
    X = draw(affgebras(tag, lam, bound))
    if tag != "r3lambda" or Q(lam) != 1:
        return X
    from affgebra.isoclass import apply_iso

    pair = pair_from_params(tag, lam, **{
        n: draw(rationals(bound)) for n in pair_parameter_names(tag, 1) if n != "beta6"
    })
    return apply_iso(Affgebra(pair, X.s), draw(moves(tag, lam, bound=3)))
