from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier.exactpoly import QuasiPolynomial, RootSystem, UnsupportedRootSystem
from gfourier.exactpoly.checks import (
    dsquare_expand,
    gamma_ell,
    identity_check,
    ladder_check,
    psi_c,
)
from gfourier.exactpoly.operators import (
    DeformedD,
    Dirac,
    DunklLaplace,
    DunklT,
    Euler,
    Gamma,
    Laplace,
    MultRPow,
    MultXVec,
    anticommutator,
    commutator,
)
from gfourier.harmonics import build_basis
from gfourier.transforms import BasisIndex, angular_element, symbolic_basis

Q = Fraction


def x(dim, i):
    return QuasiPolynomial.variable(dim, i)


# ---------------------------------------------------------- arithmetic


def test_arithmetic_examples():
    assert (x(2, 1) + (-1) * x(2, 1)).is_zero()
    x1e1 = x(2, 1).left_blade(1)
    assert x1e1 * x1e1 == -1 * (x(2, 1) * x(2, 1))
    half = QuasiPolynomial.monomial(2, (0, 0), Q(1, 2))
    assert half * (half * x(2, 2)) == QuasiPolynomial.monomial(2, (0, 1), 1)


def test_radial_square_is_canonical():
    r2 = QuasiPolynomial.monomial(3, (0, 0, 0), 2)
    coords = sum((x(3, i) * x(3, i) for i in (1, 2, 3)), QuasiPolynomial.zero(3))
    assert r2 == coords


# ---------------------------------------------------------- operators


def test_euler_on_monomial():
    f = QuasiPolynomial.monomial(2, (2, 1))
    assert Euler().apply(f) == 3 * f


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dunkl_laplace_on_radius_square(m):
    roots = RootSystem.z2m(m, [Q(k + 1, 3) for k in range(m)])
    r2 = QuasiPolynomial.monomial(m, (0,) * m, 2)
    want = QuasiPolynomial.constant(m, 2 * m + 4 * roots.gamma)
    assert DunklLaplace(roots).apply(r2) == want


@pytest.mark.parametrize("m", [2, 3, 4])
def test_dirac_of_vector_variable(m):
    assert Dirac().apply(QuasiPolynomial.x_vector(m)) == QuasiPolynomial.constant(m, -m)


@pytest.mark.parametrize("m,k", [(2, 2), (3, 1), (3, 2)])
def test_gamma_on_monogenics(m, k):
    for el in build_basis(m, k, "monogenic").elements:
        assert Gamma().apply(el) == -k * el


@given(st.integers(2, 3).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(0, 3), min_size=m, max_size=m))), st.fractions(-2, 2, max_denominator=4))
def test_dirac_squares_to_minus_laplacian(ma, s):
    m, alpha = ma
    f = QuasiPolynomial.monomial(m, alpha, 2 * s, blade=1)
    assert Dirac().apply(Dirac().apply(f)) == -1 * Laplace().apply(f)


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.fractions(0, 3, max_denominator=3), st.fractions(0, 3, max_denominator=3))
def test_dunkl_operators_commute(alpha, k1, k2):
    roots = RootSystem.z2m(2, [k1, k2])
    f = QuasiPolynomial.monomial(2, alpha)
    t1, t2 = DunklT(1, roots), DunklT(2, roots)
    assert t1.apply(t2.apply(f)) == t2.apply(t1.apply(f))


def test_dunkl_on_dihedral_commute():
    roots = RootSystem.dihedral(3, Q(2, 5))
    f = QuasiPolynomial.monomial(2, (2, 1))
    t1, t2 = DunklT(1, roots), DunklT(2, roots)
    assert t1.apply(t2.apply(f)) == t2.apply(t1.apply(f))


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.sampled_from([2, Q(1, 2), -1, Q(-3, 2)]))
def test_gamma_commutes_with_radial_powers(alpha, q):
    f = QuasiPolynomial.monomial(2, alpha, Q(1, 2), blade=2)
    assert Gamma().apply(MultRPow(q).apply(f)) == MultRPow(q).apply(Gamma().apply(f))


def test_root_system_families():
    with pytest.raises(UnsupportedRootSystem):
        RootSystem.dihedral(5, Q(1))
    assert RootSystem.dihedral(3, Q(1, 2)).is_closed()
    assert RootSystem.a_type(3, Q(1)).is_closed()
    assert not RootSystem(2, ((1, 0), (1, 1)), (Q(1), Q(1))).is_closed()


# ---------------------------------------------------------- identity_check


def test_sl2_commutator_example():
    m = 3
    rep = identity_check(commutator(Laplace(), MultRPow(2)), 4 * (Euler() + Q(m, 2)), m, 4)
    assert rep.passed and rep.checked > 0


def test_osp_anticommutator_example():
    m = 2
    rep = identity_check(anticommutator(MultXVec(), Dirac()), -2 * (Euler() + Q(m, 2)), m, 4)
    assert rep.passed


def test_deformed_anticommutator_with_fractional_radial_powers():
    c = Q(1, 3)
    m = 2
    roots = RootSystem.trivial(m)
    delta = 1 + (roots.mu - 1) / (1 + c)
    rep = identity_check(
        anticommutator(MultXVec(), DeformedD(c, roots)),
        -2 * (1 + c) * (Euler() + delta / 2),
        m,
        3,
        (0, Q(-1, 2), Q(1, 4)),
    )
    assert rep.passed


def test_identity_check_detects_a_false_identity():
    rep = identity_check(commutator(Laplace(), MultRPow(2)), 4 * Euler(), 2, 2)
    assert not rep.passed
    assert rep.counterexample is not None


# ---------------------------------------------------------- D^2 expansion


def test_dsquare_undeformed_is_minus_dunkl_laplacian():
    roots = RootSystem.z2m(2, Q(1, 2))
    assert identity_check(dsquare_expand(0, roots), -1 * DunklLaplace(roots), 2, 3).passed


@pytest.mark.parametrize(
    "c,roots",
    [(Q(1), RootSystem.trivial(2)), (Q(1, 2), RootSystem.z2m(1, 1)), (Q(1, 2), RootSystem.z2m(2, 1))],
)
def test_dsquare_expansion(c, roots):
    dd = DeformedD(c, roots)
    assert identity_check(dd @ dd, dsquare_expand(c, roots), roots.dim, 3).passed


# ---------------------------------------------------------- ladder


def _monogenic(m, ell, member=0):
    return build_basis(m, ell, "monogenic").elements[member]


def test_annihilation_kills_ground_state():
    roots = RootSystem.trivial(2)
    for c in (Q(0), Q(1), Q(1, 2)):
        for ell in (0, 1):
            m0 = _monogenic(2, ell)
            a_minus = DeformedD(c, roots) + (1 + c) * MultXVec()
            assert a_minus.apply(psi_c(c, 0, ell, m0, roots)).is_zero()


@pytest.mark.parametrize("t,ell", [(0, 0), (1, 0), (2, 1), (3, 1)])
def test_undeformed_reduces_to_clifford_hermite(t, ell):
    m = 2
    idx = BasisIndex("clifford_hermite", t, ell, 1)
    mono = angular_element(idx, m)
    psi = psi_c(0, t, ell, mono, RootSystem.trivial(m)).compile()
    ref = symbolic_basis(idx, m).compile()
    pts = np.random.default_rng(0).normal(size=(12, m))
    a, b = psi(pts), ref(pts)
    ratio = np.vdot(b, a) / np.vdot(b, b)
    assert abs(ratio) > 1e-8
    assert np.allclose(a, ratio * b, atol=1e-12)


def test_oscillator_eigenvalue_example():
    c, ell, t = Q(1), 1, 1
    roots = RootSystem.trivial(2)
    mono = _monogenic(2, ell)
    psi = psi_c(c, t, ell, mono, roots)
    dd, xv = DeformedD(c, roots), MultXVec()
    ham = dd @ dd - (1 + c) ** 2 * (xv @ xv)
    assert ham.apply(psi) == psi * (4 * (gamma_ell(c, ell, roots) + 2))


@pytest.mark.parametrize("c", [Q(0), Q(1), Q(1, 3)])
@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_ladder_check_passes(c, t):
    roots = RootSystem.trivial(2)
    for ell in (0, 1, 2):
        rep = ladder_check(c, t, ell, _monogenic(2, ell, 1), roots)
        assert rep.passed, rep.to_dict()


def test_ladder_on_z2_root_system():
    roots = RootSystem.z2m(2, Q(1, 2))
    mono = build_basis(2, 1, "dunkl_monogenic", roots).elements[0]
    assert ladder_check(Q(1, 2), 2, 1, mono, roots).passed
