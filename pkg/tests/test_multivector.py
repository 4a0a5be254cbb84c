import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier.fields import GaussianRational, QuadraticSurd
from gfourier.multivector import (
    Multivector,
    NotNegativeSquareError,
    ProductTable,
    blade_exp,
    reflect,
    vec_inner_wedge,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def exact_mv(dim):
    return st.dictionaries(st.integers(0, (1 << dim) - 1), fractions, max_size=6).map(lambda d: Multivector(dim, d))


def e(dim, *idx):
    out = Multivector.scalar(dim, 1)
    for i in idx:
        out = out * Multivector.basis_vector(dim, i + 1)
    return out


# ------------------------------------------------------------ examples


def test_generator_squares_to_minus_one():
    assert e(2, 0) * e(2, 0) == Multivector.scalar(2, -1)


def test_identity_element():
    a = Multivector(3, {0: 2, 3: Fraction(1, 3), 7: -1})
    assert Multivector.scalar(3, 1) * a == a


def test_e1e2_sign():
    assert e(2, 0) * e(2, 1) == Multivector.blade(2, 3, 1)
    assert e(2, 1) * e(2, 0) == Multivector.blade(2, 3, -1)


def test_grade_projection():
    a = Multivector(2, {0: 3, 1: 2, 3: 5})
    assert a.grade(1) == Multivector(2, {1: 2})
    assert sum((a.grade(k) for k in range(3)), Multivector(2, {})) == a
    assert (e(2, 0) * e(2, 1)).grade(2) == Multivector.blade(2, 3, 1)


def test_involutions_on_bivector():
    e12 = e(2, 0, 1)
    assert e12.bar() == -e12
    assert e12.epsilon() == e12
    assert Multivector.scalar(2, 7).bar() == Multivector.scalar(2, 7)


def test_inner_wedge_examples():
    inner, wedge = vec_inner_wedge([1, 0], [0, 1])
    assert inner == 0 and wedge == Multivector.blade(2, 3, 1)
    assert wedge * wedge == Multivector.scalar(2, -1)
    inner, wedge = vec_inner_wedge([1, 2], [1, 2])
    assert wedge.is_zero()
    inner, wedge = vec_inner_wedge([1, 1, 0], [0, 1, 1])
    assert inner == 1
    assert wedge == Multivector(3, {3: 1, 5: 1, 6: 1})
    assert wedge * wedge == Multivector.scalar(3, -3)


def test_blade_exp_examples():
    got = blade_exp(Multivector.blade(2, 3, 1.0))
    assert got.approx_equal(Multivector(2, {0: math.cos(1), 3: math.sin(1)}))
    assert blade_exp(Multivector(2, {})).approx_equal(Multivector.scalar(2, 1.0))
    assert blade_exp(Multivector.blade(2, 3, math.pi / 2)).approx_equal(Multivector.blade(2, 3, 1.0))
    with pytest.raises(NotNegativeSquareError):
        blade_exp(Multivector(3, {1: 1.0, 6: 1.0}))


def test_reflect_examples():
    r2 = math.sqrt(2)
    assert reflect([r2, 0.0], [1.0, 0.0]).approx_equal(Multivector.vector([-1.0, 0.0]))
    assert reflect([r2, 0.0], [0.0, 1.0]).approx_equal(Multivector.vector([0.0, 1.0]))
    # Householder oracle x - <a, x> a for |a|^2 = 2
    a = np.array([1.0, 1.0])
    x = np.array([1.0, 0.0])
    assert reflect(list(a), list(x)).approx_equal(Multivector.vector(list(x - a @ x * a)))
    assert reflect([1, 1], [1, 0]) == Multivector.vector([0, -1])
    with pytest.raises(ValueError):
        reflect([1, 0], [1, 0])


# ---------------------------------------------------------- invariants


@pytest.mark.parametrize("dim", range(1, 7))
def test_anticommutation_all_pairs(dim):
    for i in range(dim):
        for j in range(dim):
            lhs = e(dim, i) * e(dim, j) + e(dim, j) * e(dim, i)
            assert lhs == Multivector.scalar(dim, -2 if i == j else 0)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(exact_mv(d), exact_mv(d), exact_mv(d))))
def test_associativity_exact(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@given(st.lists(fractions, min_size=1, max_size=6))
def test_vector_square_is_minus_norm(xs):
    x = Multivector.vector(xs)
    assert x * x == Multivector.scalar(len(xs), -sum(v * v for v in xs))


@given(st.integers(1, 5).flatmap(exact_mv))
def test_involutions_are_involutive(a):
    assert a.bar().bar() == a
    assert a.epsilon().epsilon() == a


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(exact_mv(d), exact_mv(d))))
def test_bar_reverses_products(ab):
    a, b = ab
    assert (a * b).bar() == b.bar() * a.bar()
    assert (a * b).epsilon() == a.epsilon() * b.epsilon()


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=5), st.data())
def test_reflect_is_isometry(xs, data):
    d = len(xs)
    a = np.array(data.draw(st.lists(st.floats(-2, 2), min_size=d, max_size=d)))
    if np.linalg.norm(a) < 1e-3:
        a = np.eye(d)[0]
    a = a * math.sqrt(2) / np.linalg.norm(a)
    out = reflect(list(a), xs)
    comps = np.array([complex(out[1 << i]).real for i in range(d)])
    assert abs(np.linalg.norm(comps) - np.linalg.norm(xs)) < 1e-14 * max(1.0, np.linalg.norm(xs))


@given(st.lists(fractions, min_size=3, max_size=3), st.lists(fractions, min_size=3, max_size=3))
def test_reflect_isometry_exact(a, x):
    # an integer root of squared length 2 keeps arithmetic exact
    out = reflect([1, 0, -1], x)
    assert out * out == Multivector.vector(x) * Multivector.vector(x)


@given(st.integers(2, 5), st.data())
def test_blade_exp_inverse(dim, data):
    i, j = sorted(data.draw(st.lists(st.integers(0, dim - 1), min_size=2, max_size=2, unique=True)))
    theta = data.draw(st.floats(-6, 6))
    b = Multivector.blade(dim, (1 << i) | (1 << j), theta)
    prod = blade_exp(b) * blade_exp(-b)
    assert prod.approx_equal(Multivector.scalar(dim, 1.0), 1e-12)


@given(st.integers(2, 5), st.data())
def test_blade_exp_of_simple_wedge(dim, data):
    u = data.draw(st.lists(st.floats(-2, 2), min_size=dim, max_size=dim))
    v = data.draw(st.lists(st.floats(-2, 2), min_size=dim, max_size=dim))
    _, w = vec_inner_wedge(u, v)
    prod = blade_exp(w) * blade_exp(-w)
    assert prod.approx_equal(Multivector.scalar(dim, 1.0), 1e-10)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(exact_mv(d), exact_mv(d))))
def test_product_table_matches_exact_product(ab):
    a, b = ab
    tab = ProductTable(a.dim)
    got = tab.mul(a.to_array(float)[None], b.to_array(float)[None])[0]
    assert np.allclose(got, (a * b).to_array(float), atol=1e-12)


# ---------------------------------------------------------------- fields


def test_gaussian_rational_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * (1 / z) == GaussianRational(1, 0)
    # the algebra closes over Gaussian rationals
    x = Multivector.vector([GaussianRational(1, 1), GaussianRational(0, 2)])
    assert x * x == Multivector.scalar(2, -(GaussianRational(1, 1) ** 2 + GaussianRational(0, 2) ** 2))


def test_quadratic_surd_arithmetic():
    s = QuadraticSurd(0, 1, 3)
    assert s * s == QuadraticSurd(3, 0, 3)
    assert float(QuadraticSurd(1, 2, 2)) == pytest.approx(1 + 2 * math.sqrt(2))
