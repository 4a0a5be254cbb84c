import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier.kernels import KernelParams
from gfourier.quadrature import cartesian_rule
from gfourier.transforms import (
    BasisIndex,
    InvalidIndexError,
    MeasureMismatchError,
    apply_transform,
    bochner_check,
    calculus_check,
    class_eigenvalue,
    default_rule,
    default_targets,
    dunkl_integration_by_parts,
    eigen_check,
    eigen_product_check,
    eval_basis,
    factorization_check,
    finite_order,
    finite_order_check,
    heisenberg_ratio,
    inversion_check,
    master_formula_check,
    predicted_eigenvalue,
    semigroup_check,
    symbolic_basis,
    unitarity_check,
)
from gfourier.transforms.checks import default_indices
from gfourier.harmonics import build_basis


def gaussian(x):
    return np.exp(-np.sum(x * x, axis=1) / 2)


# -------------------------------------------------------------------- basis


def test_ground_state_is_gaussian():
    x = default_targets(3)
    for fam in ("scalar_hermite", "clifford_hermite", "deformed"):
        v = eval_basis(BasisIndex(fam, 0, 0), KernelParams("deformed_semigroup", 3, c=0.7), x)
        assert np.max(np.abs(v[:, 0] - gaussian(x))) < 1e-14
        assert np.max(np.abs(v[:, 1:])) == 0


def test_first_odd_clifford_hermite_is_x_times_monogenic():
    m, k = 2, 1
    x = default_targets(m)
    mon = build_basis(m, k, "monogenic").elements[0]
    from gfourier.exactpoly.operators import MultXVec

    ref = MultXVec().apply(mon).compile()(x) * gaussian(x)[:, None]
    v = eval_basis(BasisIndex("clifford_hermite", 1, k), None, x)
    assert np.max(np.abs(v - ref)) < 1e-14


@pytest.mark.parametrize(
    "fam,c,j,k",
    [
        ("clifford_hermite", 0, 3, 1),
        ("clifford_hermite", 0, 2, 2),
        ("scalar_hermite", 0, 2, 1),
        ("deformed", Fraction(1), 2, 1),
        ("deformed", Fraction(1, 2), 3, 0),
    ],
)
def test_numeric_basis_matches_exact(fam, c, j, k):
    m = 2
    params = KernelParams("deformed_semigroup", m, c=float(c)) if fam == "deformed" else None
    idx = BasisIndex(fam, j, k)
    x = default_targets(m)
    exact = symbolic_basis(idx, m, params).compile()(x)
    num = eval_basis(idx, params, x)
    assert np.max(np.abs(exact - num)) < 1e-12 * max(1.0, np.max(np.abs(exact)))


def test_invalid_index():
    with pytest.raises(InvalidIndexError):
        BasisIndex("hermite", 0, 0)
    with pytest.raises(InvalidIndexError):
        BasisIndex("scalar_hermite", -1, 0)
    with pytest.raises(InvalidIndexError):
        predicted_eigenvalue(KernelParams("cft", 2), BasisIndex("scalar_hermite", 0, 0))


# ---------------------------------------------------------------- transform


def test_gaussian_fixed_point():
    p = KernelParams("classical", 2)
    ys = default_targets(2)
    out = apply_transform(p, BasisIndex("scalar_hermite", 0, 0), default_rule(p), ys)
    assert np.max(np.abs(out[:, 0] - gaussian(ys))) < 1e-10


def test_cft_minus_on_degree_one():
    p = KernelParams("cft", 2, sign="-")
    ys = default_targets(2)
    for member in (0, 1):
        idx = BasisIndex("clifford_hermite", 0, 1, member)
        out = apply_transform(p, idx, default_rule(p, idx), ys)
        assert np.max(np.abs(out + eval_basis(idx, None, ys))) < 1e-7


def test_deformed_gaussian():
    p = KernelParams("deformed_semigroup", 2, c=1.0, mode="fourier")
    ys = default_targets(2)
    out = apply_transform(p, gaussian, default_rule(p), ys)
    assert np.max(np.abs(out[:, 0] - gaussian(ys))) < 1e-7


def test_measure_mismatch():
    p = KernelParams("classical", 2)
    rule = cartesian_rule([0.0, 0.0], 10, 0.5).reweighted(lambda x: np.abs(x[:, 0]), "|x_1|")
    with pytest.raises(MeasureMismatchError):
        apply_transform(p, gaussian, rule, default_targets(2))


def test_zero_function_maps_to_zero():
    p = KernelParams("cft", 2, mode="closed")
    out = apply_transform(p, lambda x: np.zeros(len(x)), default_rule(p), default_targets(2))
    assert np.all(out == 0)


# ---------------------------------------------------------------- eigen


def test_fractional_eigenvalue_value():
    p = KernelParams("fractional", 2, alpha=math.pi / 3)
    idx = BasisIndex("scalar_hermite", 1, 2)
    assert abs(predicted_eigenvalue(p, idx) - cmath.exp(-4j * math.pi / 3)) < 1e-15
    (rep,) = eigen_check(p, [idx])
    assert rep.rel_error < 1e-7


def test_fourier_bessel_eigenvalues():
    for p in range(4):
        assert class_eigenvalue(4, 0, 2 * p, 0) == (-1) ** p


def test_deformed_eigenvalue_value():
    p = KernelParams("deformed_semigroup", 2, c=1.0, mode="fourier")
    idx = BasisIndex("deformed", 1, 1)
    assert abs(predicted_eigenvalue(p, idx) - cmath.exp(-0.5j * math.pi) * cmath.exp(-0.25j * math.pi)) < 1e-15
    (rep,) = eigen_check(p, [idx])
    assert rep.rel_error < 1e-6


@pytest.mark.parametrize(
    "params",
    [
        KernelParams("cft", 2, mode="closed"),
        KernelParams("cft", 2, sign="+", mode="closed"),
        KernelParams("radial", 2, a=1.0, mode="closed"),
        KernelParams("dunkl_z2m", 2, kappa=(0.5, 1.0)),
        KernelParams("cft_fractional", 2, alpha=math.pi / 3, beta=math.pi / 4, mode="closed"),
    ],
    ids=["cft-", "cft+", "radial1", "dunkl", "fraccft"],
)
def test_eigen_small_indices(params):
    reps = eigen_check(params, default_indices(params, 1, 2))
    assert max(r.rel_error for r in reps) < 1e-7


def test_eigen_cft_m3_series():
    p = KernelParams("cft", 3)
    reps = eigen_check(p, default_indices(p, 1, 1))
    assert max(r.rel_error for r in reps) < 1e-6


def test_class_eigenvalue_products():
    rep = eigen_product_check(4, 10)
    assert rep.passed


def test_inversion_single_function():
    rep = inversion_check(4, 1, [BasisIndex("clifford_hermite", 0, 0)])
    assert rep.passed, rep.details


def test_inversion_needs_even_dimension():
    with pytest.raises(ValueError):
        inversion_check(3, 0)


# ---------------------------------------------------------------- calculus


@pytest.mark.parametrize("fam", ["cft", "cft_fractional"])
def test_calculus_m2(fam):
    rep = calculus_check(fam, 2)
    assert rep.passed, rep.details


def test_calculus_deformed_euler():
    rep = calculus_check("deformed_semigroup", 2, indices=[BasisIndex("deformed", 0, 1)], c=1)
    assert rep.passed, rep.details


# ------------------------------------------------------ Bochner, master, etc.


@pytest.mark.parametrize("c,ell", [(0.0, 0), (1.0, 1)])
def test_bochner(c, ell):
    rep = bochner_check(c, ell)
    assert rep.passed, rep.details


def test_bochner_phase_between_degrees():
    # the phase ratio between ell = 1 and ell = 0 is exp(-i pi / (2 (1 + c)))
    c = 1.0
    p = KernelParams("deformed_semigroup", 2, c=c, mode="fourier")
    low, high = eigen_check(p, [BasisIndex("deformed", 0, 0), BasisIndex("deformed", 0, 1)])
    r = high.measured / low.measured
    assert abs(r - cmath.exp(-1j * math.pi / (2 * (1 + c)))) < 1e-6


@pytest.mark.parametrize("c,s", [(0.0, 0.5), (1.0, 1.0)])
def test_master_formula(c, s):
    rep = master_formula_check(2, c, s)
    assert rep.passed, rep.details


def test_master_formula_at_origin():
    rep = master_formula_check(2, 1.0, 0.5, pairs=[(np.zeros(2), np.zeros(2))])
    assert rep.passed


def test_heisenberg_gaussian_equality():
    ratio = heisenberg_ratio(lambda r: math.exp(-r * r / 2), 0.0, 2)
    assert abs(ratio - 1.0) < 1e-6


def test_heisenberg_strict_for_excited_state():
    p = KernelParams("deformed_semigroup", 2, c=0.0)

    def f(r):
        return float(eval_basis(BasisIndex("deformed", 2, 0), p, np.array([[r, 0.0]]))[0, 0].real)

    assert heisenberg_ratio(f, 0.0, 2) > p.delta / 2 + 1e-3


def test_unitarity_cft():
    p = KernelParams("cft", 2, mode="closed")
    rep = unitarity_check(p, default_indices(p, 2, 2, members=2)[:10])
    assert rep.passed


def test_semigroup():
    rep = semigroup_check(2, math.pi / 3, math.pi / 5, [BasisIndex("scalar_hermite", 1, 1)])
    assert rep.passed, rep.details


def test_cft_squares_to_parity():
    rep = factorization_check("cft", 2, [BasisIndex("clifford_hermite", 0, 1)])
    assert rep.passed, rep.details


def test_dunkl_by_parts():
    assert dunkl_integration_by_parts().passed


def test_finite_order_values():
    # the Fourier transform has order 4; c = 1 halves the angular phase step
    assert finite_order(Fraction(0)) == 4
    assert finite_order(Fraction(1)) == 8
    assert finite_order(math.sqrt(2) - 1) is None
    assert finite_order_check().passed


# --------------------------------------------------------------- properties


@given(st.integers(0, 2), st.integers(0, 12), st.integers(0, 12))
def test_class_eigenvalues_invert(j, p, k):
    assert class_eigenvalue(4, j, p, k) * class_eigenvalue(4, 2 - j, p, k) == 1


@given(st.integers(0, 6), st.integers(0, 6), st.floats(0.1, 3.0), st.floats(-3.0, 3.0))
def test_fractional_cft_eigenvalues_unimodular(j, k, alpha, beta):
    p = KernelParams("cft_fractional", 2, alpha=alpha, beta=beta)
    assert abs(abs(predicted_eigenvalue(p, BasisIndex("clifford_hermite", j, k))) - 1) < 1e-12


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 8), st.integers(0, 8))
def test_rational_c_gives_roots_of_unity(num, den, t, ell):
    c = Fraction(num, den) - 1
    if c <= -1:
        return
    n = finite_order(c)
    p = KernelParams("deformed_semigroup", 2, c=float(c))
    lam = predicted_eigenvalue(p, BasisIndex("deformed", t, ell))
    assert abs(lam**n - 1) < 1e-9
