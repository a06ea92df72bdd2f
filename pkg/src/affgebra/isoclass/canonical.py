"""Gauge reduction and canonical forms for affgebras on the catalog algebras.

Every step is an explicit move applied to the actual data; the reduced
parameters are re-read from the matrices after each step, and each branch
asserts the entries it was supposed to normalize.  A final comparison with
the family representative built from the registry makes any slip in the
case trees fail loudly instead of returning a wrong label.
"""

from __future__ import annotations

from types import SimpleNamespace

from ..errors import CanonicalizationError, FieldExtensionRequired, InvalidPair
from ..exactnum import (
    ONE,
    ZERO,
    RationalMatrix,
    format_rational,
    inverse,
    is_square_rational,
    nullspace,
    rational_sqrt,
)
from ..liecore import automorphisms, require_catalog
from ..affine import Affgebra
from .families import CanonicalForm
from .moves import IsoMove, apply_iso, compose


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise CanonicalizationError(what)


def _is_lambda1(tag, lam) -> bool:
    return tag == "r3lambda" and lam == 1


def read(X: Affgebra) -> SimpleNamespace:
    """Named entries of the reduced datum (meaningful once gauge-reduced)."""
    f, g, s = X.f, X.g, X.s
    return SimpleNamespace(
        b1=f[0, 0], b2=f[1, 0], b3=f[2, 0], b4=f[1, 1], b5=f[2, 2], b6=f[2, 1], b7=f[1, 2],
        g1=g[2, 0], g2=g[2, 1], g3=g[2, 2],
        N1=s[0], N2=s[1], N3=s[2],
    )


def _block(f: RationalMatrix) -> RationalMatrix:
    return RationalMatrix([[f[1, 1], f[1, 2]], [f[2, 1], f[2, 2]]])


def _embed(a: RationalMatrix) -> RationalMatrix:
    return RationalMatrix([[1, 0, 0], [0, a[0, 0], a[0, 1]], [0, a[1, 0], a[1, 1]]])


def jordan_split(X: Affgebra) -> tuple[str, Affgebra, IsoMove]:
    """Bring a datum over r3(1) to f = diag(b1, 0, b5) with b5 >= 0 or to the
    nilpotent shape f(e2) = e3, f(e3) = 0 (plus f(e1) = b1 e1).

    The shift uses the smaller eigenvalue of the (e2, e3) block, which is
    what keeps b5 nonnegative in the diagonal branch.
    """
    tag, lam = require_catalog(X.algebra)
    _expect(_is_lambda1(tag, lam), "jordan_split needs r3(1)")
    v = read(X)
    block = _block(X.f)
    tr = block[0, 0] + block[1, 1]
    dt = block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]
    disc = tr * tr - 4 * dt
    if not is_square_rational(disc):
        raise FieldExtensionRequired(
            f"eigenvalues of the (e2, e3) block need sqrt({format_rational(disc)})"
        )
    root = rational_sqrt(disc)
    mu = (tr - root) / 2
    shifted = block - RationalMatrix.identity(2).scale(mu)
    if shifted.is_zero():
        branch, a2 = "diagonal", RationalMatrix.identity(2)
    elif root != 0:
        branch = "diagonal"
        v0 = nullspace(shifted)[0].col(0)
        vr = nullspace(shifted - RationalMatrix.identity(2).scale(root))[0].col(0)
        a2 = inverse(RationalMatrix.from_columns([v0, vr]))
    else:
        branch = "nilpotent"
        e2 = (ONE, ZERO)
        start = e2 if any(shifted @ e2) else (ZERO, ONE)
        a2 = inverse(RationalMatrix.from_columns([start, shifted @ start]))
    move = IsoMove(_embed(a2), (mu, -v.b2, -v.b3))
    Y = apply_iso(X, move, check=False)
    w = read(Y)
    if branch == "diagonal":
        _expect(Y.f == RationalMatrix.diag(w.b1, 0, w.b5) and w.b5 >= 0, "diagonal split")
    else:
        _expect(Y.f == RationalMatrix([[w.b1, 0, 0], [0, 0, 0], [0, 1, 0]]), "nilpotent split")
    return branch, Y, move


def gauge_reduce(X: Affgebra) -> tuple[Affgebra, IsoMove]:
    """Remove the inner-derivation freedom f -> f - ad_a (and, on r3(1),
    put the (e2, e3) block in Jordan form)."""
    if not X.verified:
        raise InvalidPair("the (f, g) pair does not satisfy the generalized-derivation identity")
    tag, lam = require_catalog(X.algebra)
    v = read(X)
    if tag == "r3":
        move = IsoMove.gauge((v.b7, v.b3 - v.b2, -v.b3))
        Y = apply_iso(X, move, check=False)
        w = read(Y)
        _expect(Y.f == RationalMatrix.diag(w.b1, w.b4, w.b4), "r3 gauge")
        return Y, move
    if _is_lambda1(tag, lam):
        _, Y, move = jordan_split(X)
        return Y, move
    if tag == "r3lambda":
        move = IsoMove.gauge((v.b4, -v.b2, -v.b3 / lam))
        Y = apply_iso(X, move, check=False)
        w = read(Y)
        _expect(Y.f == RationalMatrix.diag(w.b1, 0, w.b5), "r3(lambda) gauge")
        return Y, move
    move = IsoMove.gauge((v.b4, -v.b2, ZERO))
    Y = apply_iso(X, move, check=False)
    w = read(Y)
    _expect(w.b2 == 0 and w.b4 == 0, "r2c gauge")
    return Y, move


class _Reducer:
    """Current datum plus the chain of moves that produced it."""

    def __init__(self, X: Affgebra):
        self.tag, self.lam = require_catalog(X.algebra)
        self.family = automorphisms(self.tag, self.lam)
        self.X, first = gauge_reduce(X)
        self.chain = [] if first.is_identity() else [first]
        self.branch = None
        if _is_lambda1(self.tag, self.lam):
            self.branch = "nilpotent" if self.X.f[2, 1] != 0 else "diagonal"

    @property
    def v(self) -> SimpleNamespace:
        return read(self.X)

    def step(self, C3=ZERO, **alphas) -> SimpleNamespace:
        """Apply the automorphism with the given alphas (and e3-shift C3),
        then restore the gauge."""
        psi = self.family(**alphas)
        first = IsoMove(psi, (ZERO, ZERO, C3))
        if first.is_identity():
            return self.v
        Y, second = gauge_reduce(apply_iso(self.X, first, check=False))
        self.X = Y
        self.chain.append(compose(first, second))
        return self.v

    def finish(self, family: str, **params) -> tuple[CanonicalForm, tuple[IsoMove, ...]]:
        form = CanonicalForm(family, params, self.lam)
        bad = form.violated_conditions()
        if bad:
            raise CanonicalizationError(f"{form.label()} violates {bad}")
        if form.representative() != self.X:
            raise CanonicalizationError(f"reduced datum does not match {form.label()}")
        return form, tuple(self.chain)


def canonicalize(X: Affgebra) -> tuple[CanonicalForm, tuple[IsoMove, ...]]:
    """Canonical family and parameters of X, with the moves that reach it.

    Replaying the returned moves on X with apply_iso gives the family
    representative exactly.
    """
    r = _Reducer(X)
    if r.tag == "r3":
        return _canon_r3(r)
    if r.tag == "r2c":
        return _canon_r2c(r)
    if r.branch == "nilpotent":
        return _canon_k(r)
    return _canon_h(r)


def _canon_r3(r: _Reducer):
    v = r.v
    b1, b4 = v.b1, v.b4
    q = (b1 - b4) * (1 - b1)
    p = v.N1 - q
    if p != 0:
        a2 = -v.N3 / p
        v = r.step(alpha2=a2, alpha1=-(a2 * q + v.N2) / p)
        _expect(v.N2 == 0 and v.N3 == 0, "F1 reduction")
        return r.finish("F1", beta1=b1, beta4=b4, N1=v.N1)
    if v.N3 != 0:
        a4 = 1 / v.N3
        v = r.step(alpha4=a4, alpha3=-a4 * v.N2 / v.N3)
        _expect(v.N2 == 0 and v.N3 == 1, "F2 reduction")
        return r.finish("F2", beta1=b1, beta4=b4)
    if q != 0:
        v = r.step(alpha2=-v.N2 / q)
        _expect(v.N2 == 0, "F1 reduction on N1 = q")
        return r.finish("F1", beta1=b1, beta4=b4, N1=v.N1)
    if v.N2 == 0:
        return r.finish("F1", beta1=b1, beta4=b4, N1=v.N1)
    v = r.step(alpha4=1 / v.N2)
    _expect(v.N2 == 1, "N2 scaling")
    if b1 == b4:
        return r.finish("F3", beta1=b1)
    return r.finish("F4", beta4=b4)


def _canon_h(r: _Reducer):
    v = r.v
    lam = r.lam
    b1, b5 = v.b1, v.b5
    p2 = v.N1 - b1 * (1 - b1)
    p3 = v.N1 - (b1 - b5) * (1 - b1) / lam
    if lam == 1 and b5 == 0:
        # the (e2, e3) block vanishes and GL2 acts on (N2, N3)
        if p2 != 0:
            v = r.step(alpha1=-v.N2 / p2, alpha2=-v.N3 / p2)
            _expect(v.N2 == 0 and v.N3 == 0, "H1 reduction")
            return r.finish("H1", beta1=b1, beta5=b5, N1=v.N1)
        if v.N2 != 0:
            v = r.step(alpha3=1 / v.N2, alpha5=-v.N3 / v.N2, alpha4=ONE)
        elif v.N3 != 0:
            v = r.step(alpha3=ZERO, alpha6=1 / v.N3, alpha5=ONE, alpha4=ZERO)
        else:
            return r.finish("H1", beta1=b1, beta5=b5, N1=v.N1)
        _expect(v.N2 == 1 and v.N3 == 0, "H2 reduction")
        return r.finish("H2", beta1=b1, beta5=b5)

    alphas = {}
    if p2 != 0:
        alphas["alpha1"] = -v.N2 / p2
    elif v.N2 != 0:
        alphas["alpha3"] = 1 / v.N2
    if p3 != 0:
        alphas["alpha2"] = -v.N3 / p3
    elif v.N3 != 0:
        alphas["alpha4"] = 1 / v.N3
    v = r.step(**alphas)
    n2, n3 = v.N2, v.N3
    _expect(n2 in (0, 1) and n3 in (0, 1), "H reduction")
    if (n2, n3) == (0, 0):
        return r.finish("H1", beta1=b1, beta5=b5, N1=v.N1)
    if (n2, n3) == (1, 0):
        return r.finish("H2", beta1=b1, beta5=b5)
    if (n2, n3) == (0, 1):
        return r.finish("H3", beta1=b1, beta5=b5)
    if b5 == b1 * (1 - lam):
        return r.finish("H5", beta1=b1)
    return r.finish("H4", beta5=b5)


def _canon_k(r: _Reducer):
    v = r.v
    b1 = v.b1
    _expect(v.b6 == 1, "nilpotent split normalizes beta6")
    p = v.N1 - b1 * (1 - b1)
    if p != 0:
        a1 = -v.N2 / p
        v = r.step(alpha1=a1, alpha2=-(v.N3 + a1 * (1 - b1)) / p)
        _expect(v.N2 == 0 and v.N3 == 0, "K1 reduction")
        return r.finish("K1", beta1=b1, N1=v.N1)
    if v.N2 != 0:
        t = 1 / v.N2
        v = r.step(alpha3=t, alpha4=t, alpha5=-t * v.N3 / v.N2)
        _expect(v.N2 == 1 and v.N3 == 0, "K2 reduction")
        return r.finish("K2", beta1=b1)
    if b1 != 1:
        v = r.step(alpha1=-v.N3 / (1 - b1))
        _expect(v.N3 == 0, "K1 reduction on N1 = b1(1 - b1)")
        return r.finish("K1", beta1=b1, N1=v.N1)
    if v.N3 != 0:
        t = 1 / v.N3
        v = r.step(alpha3=t, alpha4=t)
        _expect(v.N3 == 1, "K3 reduction")
        return r.finish("K3")
    return r.finish("K1", beta1=b1, N1=v.N1)


def _canon_r2c(r: _Reducer):
    v = r.v
    b1, b5 = v.b1, v.b5
    if b1 != b5:
        return _r2c_generic(r)
    if v.g2 != 0:
        return _r2c_equal_g2(r)
    return _r2c_equal_no_g2(r)


def _unit_scale(x):
    return 1 / x if x != 0 else ONE


def _r2c_generic(r: _Reducer):
    """beta1 != beta5: beta3 can always be removed."""
    v = r.v
    b1, b5 = v.b1, v.b5
    if v.b3 != 0:
        v = r.step(alpha2=-v.b3 / (b1 - b5))
        _expect(v.b3 == 0, "beta3 removal")
    p = v.N1 - b1 * (1 - b1)
    if v.g2 != 0:
        v = r.step(alpha4=1 / v.g2, alpha1=v.g1 / v.g2)
        _expect(v.b3 == 0 and v.g1 == 0 and v.g2 == 1, "gamma normalization")
        g3 = v.g3
        if g3 != 1:
            t = _unit_scale(v.N2)
            v = r.step(alpha3=t, alpha4=t, C3=v.N3 / (g3 - 1))
            _expect(v.N3 == 0 and v.N2 in (0, 1), "L1/L2 reduction")
            fam = "L2" if v.N2 else "L1"
            return r.finish(fam, beta1=b1, beta5=b5, gamma3=g3, N1=v.N1)
        if v.N3 != 0:
            t = 1 / v.N3
            v = r.step(alpha3=t, alpha4=t)
            _expect(v.N3 == 1, "L3 reduction")
            return r.finish("L3", beta1=b1, beta5=b5, N1=v.N1, N2=v.N2)
        t = _unit_scale(v.N2)
        v = r.step(alpha3=t, alpha4=t)
        fam = "L2" if v.N2 else "L1"
        return r.finish(fam, beta1=b1, beta5=b5, gamma3=g3, N1=v.N1)

    # gamma2 = 0: alpha2 is spent on beta3; alpha1, alpha3, alpha4, C3 remain
    g3 = v.g3
    alphas = {}
    if p != 0:
        alphas["alpha1"] = -v.N2 / p
    elif v.N2 != 0:
        alphas["alpha3"] = 1 / v.N2
    C3 = ZERO
    if g3 != 1:
        C3 = v.N3 / (g3 - 1)
        if v.g1 != 0:
            alphas["alpha4"] = 1 / v.g1
    elif v.N3 != 0:
        alphas["alpha4"] = 1 / v.N3
    elif v.g1 != 0:
        alphas["alpha4"] = 1 / v.g1
    v = r.step(C3=C3, **alphas)
    _expect(v.b3 == 0 and v.N2 in (0, 1), "gamma2 = 0 reduction")
    if v.N3 != 0:
        _expect(g3 == 1 and v.N3 == 1, "N3 normalization")
        if v.N2 == 0:
            return r.finish("L6", beta1=b1, beta5=b5, gamma1=v.g1, N1=v.N1)
        return r.finish("L9", beta1=b1, beta5=b5, gamma1=v.g1)
    _expect(v.g1 in (0, 1), "gamma1 normalization")
    if v.N2 == 0:
        fam = "L5" if v.g1 else "L4"
        return r.finish(fam, beta1=b1, beta5=b5, gamma3=g3, N1=v.N1)
    fam = "L8" if v.g1 else "L7"
    return r.finish(fam, beta1=b1, beta5=b5, gamma3=g3)


def _r2c_equal_g2(r: _Reducer):
    """beta1 = beta5, gamma2 != 0.  After gamma1 = 0, gamma2 = 1 the moves
    preserving that shape have alpha3 = alpha4 = t and alpha1 = u (beta1 - gamma3)."""
    v = r.v
    b1 = v.b1
    v = r.step(alpha4=1 / v.g2, alpha1=v.g1 / v.g2)
    _expect(v.g1 == 0 and v.g2 == 1, "gamma normalization")
    g3 = v.g3
    p = v.N1 - b1 * (1 - b1)

    def shape_move(t=ONE, u=ZERO, C3=ZERO):
        return r.step(alpha1=u * (b1 - g3), alpha2=u, alpha3=t, alpha4=t, C3=C3)

    if g3 != 1:
        rr = v.N1 - b1 * (g3 - b1)
        if (b1 - g3) * p != 0:
            u = -v.N2 / ((b1 - g3) * p)
            v = shape_move(u=u, C3=(v.N3 + u * rr) / (g3 - 1))
            _expect(v.N2 == 0 and v.N3 == 0, "L1/L10 reduction")
            if v.b3 == 0:
                return r.finish("L1", beta1=b1, beta5=b1, gamma3=g3, N1=v.N1)
            v = shape_move(t=1 / v.b3)
            _expect(v.b3 == 1 and v.N2 == 0 and v.N3 == 0, "L10 scaling")
            return r.finish("L10", beta1=b1, gamma3=g3, N1=v.N1)
        t = _unit_scale(v.b3) if v.b3 != 0 else _unit_scale(v.N2)
        v = shape_move(t=t, C3=v.N3 / (g3 - 1))
        _expect(v.N3 == 0, "N3 removal")
        if v.b3 == 0:
            fam = "L2" if v.N2 else "L1"
            return r.finish(fam, beta1=b1, beta5=b1, gamma3=g3, N1=v.N1)
        _expect(v.b3 == 1, "beta3 scaling")
        if g3 == b1:
            return r.finish("L11", beta1=b1, N1=v.N1, N2=v.N2)
        return r.finish("L12", beta1=b1, gamma3=g3, N2=v.N2)

    # gamma3 = 1
    if p != 0:
        v = shape_move(u=-v.N3 / p)
        _expect(v.N3 == 0, "N3 removal")
        t = _unit_scale(v.b3) if v.b3 != 0 else _unit_scale(v.N2)
        v = shape_move(t=t)
        if v.b3 == 0:
            fam = "L2" if v.N2 else "L1"
            return r.finish(fam, beta1=b1, beta5=b1, gamma3=ONE, N1=v.N1)
        return r.finish("L13", beta1=b1, N1=v.N1, N2=v.N2)
    if v.N3 != 0:
        v = shape_move(t=1 / v.N3)
        _expect(v.N3 == 1, "N3 scaling")
        return r.finish("L14", beta1=b1, beta3=v.b3, N2=v.N2)
    t = _unit_scale(v.b3) if v.b3 != 0 else _unit_scale(v.N2)
    v = shape_move(t=t)
    if v.b3 == 0:
        fam = "L2" if v.N2 else "L1"
        return r.finish(fam, beta1=b1, beta5=b1, gamma3=ONE, N1=v.N1)
    return r.finish("L13", beta1=b1, N1=v.N1, N2=v.N2)


def _finish_b3_n2(r: _Reducer, b1, g3, v):
    """Endpoint once gamma1 = N3 = 0 on beta1 = beta5, gamma2 = 0, N1 = b1(1-b1)
    or the analogous P != 0 case with N2 = 0."""
    key = (v.b3 != 0, v.N2 != 0)
    if key == (False, False):
        return r.finish("L4", beta1=b1, beta5=b1, gamma3=g3, N1=v.N1)
    if key == (True, False):
        return r.finish("L15", beta1=b1, gamma3=g3, N1=v.N1)
    if key == (False, True):
        return r.finish("L7", beta1=b1, beta5=b1, gamma3=g3)
    return r.finish("L19", beta1=b1, gamma3=g3)


def _r2c_equal_no_g2(r: _Reducer):
    """beta1 = beta5, gamma2 = 0."""
    v = r.v
    b1, g3 = v.b1, v.g3
    p = v.N1 - b1 * (1 - b1)
    n2_scale = {} if p != 0 else {"alpha3": _unit_scale(v.N2)}
    if p != 0 and v.N2 != 0:
        v = r.step(alpha1=-v.N2 / p)
        _expect(v.N2 == 0, "N2 removal")

    if g3 != 1:
        if g3 != b1:
            a2 = v.g1 / (g3 - b1)
            v = r.step(alpha2=a2, C3=(a2 * v.N1 + v.N3) / (g3 - 1), **n2_scale)
            _expect(v.g1 == 0 and v.N3 == 0, "gamma1/N3 removal")
            if v.b3 != 0:
                v = r.step(alpha4=1 / v.b3)
            return _finish_b3_n2(r, b1, g3, v)
        # gamma3 = beta1 != 1: gamma1 and beta3 scale together
        a4 = _unit_scale(v.g1) if v.g1 != 0 else _unit_scale(v.b3)
        v = r.step(alpha4=a4, C3=v.N3 / (g3 - 1), **n2_scale)
        _expect(v.N3 == 0, "N3 removal")
        if v.g1 != 0:
            _expect(v.g1 == 1, "gamma1 scaling")
            fam = "L20" if v.N2 else "L16"
            if fam == "L16":
                return r.finish(fam, beta1=b1, beta3=v.b3, N1=v.N1)
            return r.finish(fam, beta1=b1, beta3=v.b3)
        return _finish_b3_n2(r, b1, g3, v)

    # gamma3 = 1
    if p != 0:
        if v.N1 != 0:
            v = r.step(alpha2=-v.N3 / v.N1)
            _expect(v.N3 == 0, "N3 removal")
            if v.g1 != 0:
                v = r.step(alpha4=1 / v.g1)
                return r.finish("L17", beta1=b1, beta3=v.b3, N1=v.N1)
            if v.b3 != 0:
                v = r.step(alpha4=1 / v.b3)
            return _finish_b3_n2(r, b1, g3, v)
        # N1 = 0 forces beta1 not in {0, 1}
        v = r.step(alpha2=v.g1 / (1 - b1))
        _expect(v.g1 == 0, "gamma1 removal")
        if v.N3 != 0:
            v = r.step(alpha4=1 / v.N3)
            return r.finish("L18", beta1=b1, beta3=v.b3)
        if v.b3 != 0:
            v = r.step(alpha4=1 / v.b3)
        return _finish_b3_n2(r, b1, g3, v)

    # gamma3 = 1, N1 = b1(1 - b1)
    if b1 != 1 and v.g1 != 0:
        v = r.step(alpha2=v.g1 / (1 - b1))
        _expect(v.g1 == 0, "gamma1 removal")
    if v.g1 != 0:
        v = r.step(alpha4=1 / v.g1, **n2_scale)
        _expect(v.g1 == 1 and v.N2 in (0, 1), "L23/L24 scaling")
        fam = "L24" if v.N2 else "L23"
        return r.finish(fam, beta3=v.b3, N3=v.N3)
    if v.N3 != 0:
        v = r.step(alpha4=1 / v.N3, **n2_scale)
        _expect(v.N3 == 1 and v.N2 in (0, 1), "L21/L22 scaling")
        fam = "L22" if v.N2 else "L21"
        return r.finish(fam, beta1=b1, beta3=v.b3)
    v = r.step(alpha4=_unit_scale(v.b3), **n2_scale)
    return _finish_b3_n2(r, b1, g3, v)


def invariants(X: Affgebra) -> dict:
    """Quantities fixed by every isomorphism once the gauge is reduced.

    Equal maps do not imply isomorphism; different maps rule it out.
    On r3(1) the Jordan branch is recorded as ``nilpotent`` (0 or 1).
    """
    Y, _ = gauge_reduce(X)
    tag, lam = require_catalog(X.algebra)
    v = read(Y)
    if tag == "r3":
        return {"beta1": v.b1, "beta4": v.b4, "N1": v.N1}
    if tag == "r2c":
        return {"beta1": v.b1, "beta5": v.b5, "gamma3": v.g3, "N1": v.N1}
    if _is_lambda1(tag, lam) and v.b6 != 0:
        return {"nilpotent": ONE, "beta1": v.b1, "N1": v.N1}
    out = {"beta1": v.b1, "beta5": v.b5, "N1": v.N1}
    if _is_lambda1(tag, lam):
        out["nilpotent"] = ZERO
    return out
