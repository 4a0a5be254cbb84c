import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier import suites
from gfourier.specfun import (
    PoleError,
    SpecFunContext,
    bessel_j,
    bessel_jhat,
    bessel_jtilde,
    double_factorial,
    gamma_fn,
    gegenbauer,
    gegenbauer_table,
    jhat_ladder,
    laguerre,
    laguerre_coefficients,
)


# ------------------------------------------------------------ examples


def test_jtilde_examples():
    for nu in (0.0, 0.5, 1.0, 3.5):
        assert bessel_jtilde(nu, 0.0) == pytest.approx(1 / math.gamma(nu + 1), rel=1e-15)
    for z in (0.3, 1.0, 4.0, 11.0):
        assert bessel_jtilde(-0.5, z) == pytest.approx(math.cos(z) / math.sqrt(math.pi), abs=1e-14)
    assert abs(bessel_jtilde(0.5, math.pi)) < 1e-15


def test_bessel_j_examples():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-10


def test_gegenbauer_examples():
    w = np.linspace(-1, 1, 7)
    assert np.all(gegenbauer(0, 1.3, w) == 1)
    assert np.allclose(gegenbauer(1, 1.3, w), 2 * 1.3 * w)
    assert gegenbauer(2, 0.0, 0.5, "limit_scaled") == pytest.approx(-1.0, abs=1e-15)


def test_laguerre_examples():
    assert laguerre(0, 0.7, 2.0) == 1
    assert laguerre(1, 0.7, 2.0) == pytest.approx(1 + 0.7 - 2.0)
    assert laguerre(2, 0.0, 0.0) == pytest.approx(1.0)


def test_gamma_and_double_factorial():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(7) == 105
    with pytest.raises(PoleError):
        gamma_fn(-2.0)
    with pytest.raises(ValueError):
        double_factorial(-3)


def test_context_validation():
    with pytest.raises(ValueError):
        SpecFunContext(tol=1e-3)


# ----------------------------------------------------- independent oracles


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 7.0, 20.0, 45.5])
@pytest.mark.parametrize("z", [0.01, 0.7, 3.0, 9.5, 27.0, 80.0])
def test_bessel_against_mpmath(nu, z):
    want = float(mpmath.besselj(nu, z))
    got = float(bessel_j(nu, z))
    assert abs(got - want) <= 1e-12 * max(1e-3, abs(want)) + 1e-300


@given(st.floats(0, 30), st.one_of(st.just(0.0), st.floats(1e-3, 60), st.floats(-60, -1e-3)))
def test_jhat_matches_mpmath(nu, z):
    want = mpmath.gamma(nu + 1) * mpmath.besselj(nu, abs(z)) / mpmath.power(abs(z) / 2, nu) if z != 0 else 1
    got = bessel_jhat(nu, z)
    assert abs(got - float(want)) <= 1e-10 * max(1.0, abs(float(want)))


def test_jhat_complex_argument():
    z = np.array([1 + 2j, 3 - 0.5j, 0.2j])
    want = np.array([complex(mpmath.besselj(1.5, v) / (v / 2) ** 1.5 * mpmath.gamma(2.5)) for v in z])
    assert np.allclose(bessel_jhat(1.5, z), want, rtol=1e-12)


def test_jhat_ladder_matches_direct():
    z = np.linspace(0.0, 40.0, 17)
    ladder = jhat_ladder(0.5, 30, z)
    direct = np.array([bessel_jhat(0.5 + k, z) for k in range(31)])
    assert np.allclose(ladder, direct, rtol=1e-11, atol=1e-13)


@given(st.integers(0, 12), st.floats(0.1, 5.0), st.floats(-1, 1))
def test_gegenbauer_against_explicit_sum(k, lam, w):
    # C_k^lam(w) = sum_i (-1)^i Gamma(k-i+lam) / (Gamma(lam) i! (k-2i)!) (2w)^(k-2i), in 50 digits
    with mpmath.workdps(50):
        lm, ww = mpmath.mpf(lam), mpmath.mpf(w)
        want = float(
            sum(
                (-1) ** i * mpmath.gamma(k - i + lm) / (mpmath.gamma(lm) * mpmath.factorial(i) * mpmath.factorial(k - 2 * i)) * (2 * ww) ** (k - 2 * i)
                for i in range(k // 2 + 1)
            )
        )
    assert gegenbauer(k, lam, w) == pytest.approx(want, rel=1e-11, abs=1e-11)


@given(st.integers(0, 12), st.floats(-1, 1))
def test_limit_scaled_is_twice_chebyshev(k, w):
    want = 1.0 if k == 0 else 2 * math.cos(k * math.acos(w))
    assert gegenbauer_table(k, 0.0, w, "limit_scaled")[k] == pytest.approx(want, abs=1e-12)


@given(st.integers(0, 10), st.floats(-0.5, 6), st.floats(0, 20))
def test_laguerre_against_mpmath(j, alpha, t):
    want = float(mpmath.laguerre(j, alpha, t))
    assert laguerre(j, alpha, t) == pytest.approx(want, rel=1e-10, abs=1e-10 * max(1.0, t**j))


@given(st.integers(0, 8), st.fractions(0, 5, max_denominator=4))
def test_laguerre_coefficients_exact(j, alpha):
    coeffs = laguerre_coefficients(j, alpha)
    assert coeffs[0] == Fraction(math.prod(alpha + s for s in range(1, j + 1)), math.factorial(j))
    t = 1.7
    assert sum(float(c) * t**i for i, c in enumerate(coeffs)) == pytest.approx(laguerre(j, float(alpha), t), rel=1e-12)


@given(st.integers(0, 15))
def test_double_factorial_gamma_identity(n):
    # (2n-1)!! = 2^n Gamma(n + 1/2) / sqrt(pi)
    assert double_factorial(2 * n - 1) == pytest.approx(2**n * math.gamma(n + 0.5) / math.sqrt(math.pi), rel=1e-13)


# -------------------------------------------------- invariant suites


@pytest.mark.parametrize(
    "check",
    [
        suites.bessel_recurrence_check,
        suites.gegenbauer_derivative_check,
        suites.laguerre_orthogonality_check,
        suites.laguerre_hankel_check,
        suites.bessel_gaussian_integral_check,
    ],
)
def test_specfun_identities(check):
    rep = check()
    assert rep.checked > 0
    assert rep.passed, rep.to_dict()
