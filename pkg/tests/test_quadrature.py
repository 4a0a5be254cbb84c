import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier.harmonics import sphere_moment
from gfourier.kernels import KernelParams
from gfourier.quadrature import (
    cartesian_rule,
    legendre_radial_rule,
    radial_rule,
    rm_rule,
    sphere_rule,
    sqrt_radial_rm_rule,
    zonal_rule,
)
from gfourier.specfun import laguerre
from gfourier.transforms import BasisIndex, eval_basis, measure_weight


def test_radial_examples():
    r1 = radial_rule(10, 1.0)
    assert r1.integrate(np.ones_like(r1.nodes)) == pytest.approx(0.5, rel=1e-14)
    r0 = radial_rule(10, 0.0)
    assert r0.integrate(r0.nodes**2) == pytest.approx(math.sqrt(math.pi) / 4, rel=1e-14)
    r3 = radial_rule(10, 3.0)
    t = r3.nodes**2
    assert abs(r3.integrate(laguerre(2, 1.0, t) * laguerre(3, 1.0, t))) < 1e-13


@given(st.floats(-0.9, 6), st.floats(0.5, 3), st.floats(0.3, 3), st.integers(0, 6))
def test_radial_rule_moments(beta, a, b, p):
    # int r^(beta + a p) exp(-b r^a) dr = Gamma((beta + 1)/a + p) / (a b^((beta+1)/a + p))
    rule = radial_rule(8, beta, a, b)
    s = (beta + 1) / a + p
    want = math.gamma(s) / (a * b**s)
    assert rule.integrate(rule.nodes ** (a * p)) == pytest.approx(want, rel=1e-11)


def test_radial_rule_validation():
    for args in [(0, 1.0), (5, -1.0), (5, 1.0, 0.0), (5, 1.0, 2.0, -1.0)]:
        with pytest.raises(ValueError):
            radial_rule(*args)


def test_sphere_examples():
    s1 = sphere_rule(2, 8)
    assert s1.integrate(np.ones(len(s1))) == pytest.approx(2 * math.pi, rel=1e-15)
    s2 = sphere_rule(3, 6)
    assert s2.integrate(s2.nodes[:, 0] ** 2) == pytest.approx(4 * math.pi / 3, rel=1e-14)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("res", [4, 7, 10])
def test_sphere_declared_exactness(m, res):
    rule = sphere_rule(m, res)
    deg = rule.accuracy_degree
    rng = np.random.default_rng(m * 100 + res)
    for _ in range(6):
        alpha = rng.multinomial(deg, np.ones(m) / m) if deg <= 12 else rng.multinomial(8, np.ones(m) / m)
        q, p = sphere_moment(tuple(int(a) for a in alpha))
        num = rule.integrate(np.prod(rule.nodes ** alpha, axis=1))
        assert num == pytest.approx(float(q) * math.pi**p, abs=1e-13)


def test_rm_examples():
    r2 = rm_rule(2, 1, 12, 8, 2.0, 1.0)
    assert r2.integrate(np.exp(-np.sum(r2.nodes**2, axis=1))) == pytest.approx(math.pi, rel=1e-13)
    r3 = rm_rule(3, 2, 12, 8, 2.0, 1.0)
    vals = r3.nodes[:, 0] ** 2 * np.exp(-np.sum(r3.nodes**2, axis=1))
    assert r3.integrate(vals) == pytest.approx(math.pi**1.5 / 2, rel=1e-13)


def test_deformed_laguerre_orthogonality():
    p = KernelParams("deformed_semigroup", 2, c=1.0)
    # the weight r^(-1/2) calls for a rule polynomial in sqrt(r)
    rule = sqrt_radial_rm_rule(2, 60.0, 80, 8)
    w = rule.weights * measure_weight(p, rule.nodes)
    a = eval_basis(BasisIndex("deformed", 0, 0), p, rule.nodes)
    b = eval_basis(BasisIndex("deformed", 2, 0), p, rule.nodes)
    inner = np.einsum("na,na,n->", a.conj(), b, w)
    assert abs(inner) < 1e-9
    assert np.einsum("na,na,n->", a.conj(), a, w).real > 1.0


def test_cartesian_rule_moments():
    rule = cartesian_rule([1.0, 0.0], 10, 0.5)
    vals = np.abs(rule.nodes[:, 0]) * rule.nodes[:, 1] ** 2 * np.exp(-0.5 * np.sum(rule.nodes**2, axis=1))
    # int |x| e^{-x^2/2} dx * int y^2 e^{-y^2/2} dy = 2 * sqrt(2 pi)
    assert rule.integrate(vals) == pytest.approx(2 * math.sqrt(2 * math.pi), rel=1e-12)


def test_ball_rules():
    ball = sqrt_radial_rm_rule(3, 2.0, 30, 8)
    assert ball.integrate(np.ones(len(ball))) == pytest.approx(4 / 3 * math.pi * 8, rel=1e-12)
    leg = legendre_radial_rule(10, 3.0)
    assert leg.integrate(leg.nodes**4) == pytest.approx(3.0**5 / 5, rel=1e-13)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_zonal_rule_on_zonal_integrand(m):
    rule = zonal_rule(m, 30.0, 60, 20)
    r = np.linalg.norm(rule.nodes, axis=1)
    vals = (1 + rule.nodes[:, 0] ** 2) * np.exp(-r * r)
    exact = math.pi ** (m / 2) * (1 + 0.5)
    assert rule.integrate(vals) == pytest.approx(exact, rel=1e-10)


@pytest.mark.parametrize(
    "params,idx",
    [
        (KernelParams("cft", 2, mode="closed"), BasisIndex("clifford_hermite", 1, 1)),
        (KernelParams("fractional", 2, alpha=math.pi / 3), BasisIndex("scalar_hermite", 1, 2)),
    ],
)
def test_rule_refinement_is_stable(params, idx):
    from gfourier.transforms import eigen_check

    base = eigen_check(params, [idx], level=0)[0]
    fine = eigen_check(params, [idx], level=2)[0]
    assert abs(base.measured - fine.measured) < 10 * 1e-6
