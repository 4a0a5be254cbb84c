import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfourier import suites
from gfourier.exactpoly import QuasiPolynomial, RootSystem
from gfourier.exactpoly.operators import Dirac, DunklDirac, DunklLaplace, Laplace, MultXVec
from gfourier.harmonics import (
    NotHarmonicError,
    build_basis,
    expected_dimension,
    fischer_project,
    gram_matrix,
    orthonormalize,
    repr_kernel,
    sphere_area,
    sphere_moment,
)
from gfourier.multivector import Multivector
from gfourier.quadrature import sphere_rule
from gfourier.specfun import gegenbauer

Q = Fraction


def _span_rank(elements, m):
    """Rank of the coefficient matrix of exact polynomials."""
    keys = sorted({k for e in elements for k in e.canonical().terms}, key=repr)
    mat = np.array([[float(e.canonical().terms.get(k, 0)) for k in keys] for e in elements])
    return np.linalg.matrix_rank(mat) if len(elements) else 0


def test_m2_k0_monogenic_is_whole_algebra():
    b = build_basis(2, 0, "monogenic")
    assert len(b) == 4 == expected_dimension(2, 0, "monogenic")


def test_m3_linear_harmonics():
    b = build_basis(3, 1, "harmonic")
    xs = [QuasiPolynomial.variable(3, i) for i in (1, 2, 3)]
    assert len(b) == 3
    assert _span_rank(list(b.elements) + xs, 3) == 3


def test_m2_quadratic_harmonics():
    b = build_basis(2, 2, "harmonic")
    x1, x2 = QuasiPolynomial.variable(2, 1), QuasiPolynomial.variable(2, 2)
    ref = [x1 * x1 - x2 * x2, x1 * x2]
    assert len(b) == 2
    assert _span_rank(list(b.elements) + ref, 2) == 2


@pytest.mark.parametrize(
    "m,k,kind",
    [(m, k, kind) for m in (2, 3, 4) for k in range(4) for kind in ("harmonic", "monogenic") if m + k <= 6],
)
def test_dimensions(m, k, kind):
    b = build_basis(m, k, kind)
    assert len(b) == expected_dimension(m, k, kind)
    op = Laplace() if kind == "harmonic" else Dirac()
    assert all(op.apply(e).is_zero() for e in b.elements)


@pytest.mark.parametrize("kind", ["dunkl_harmonic", "dunkl_monogenic"])
def test_dunkl_dimensions_match_classical(kind):
    roots = RootSystem.z2m(2, [Q(1, 2), Q(1, 3)])
    for k in range(3):
        b = build_basis(2, k, kind, roots)
        assert len(b) == expected_dimension(2, k, kind)
        op = DunklLaplace(roots) if kind == "dunkl_harmonic" else DunklDirac(roots)
        assert all(op.apply(e).is_zero() for e in b.elements)


def test_fischer_projection_examples():
    mono = build_basis(3, 2, "monogenic").elements[0]
    p1, p2 = fischer_project(mono)
    assert p1 == mono and p2.is_zero()
    lower = build_basis(3, 1, "monogenic").elements[2]
    xm = MultXVec().apply(lower)
    p1, p2 = fischer_project(xm)
    assert p1.is_zero() and p2 == xm
    x1 = QuasiPolynomial.variable(2, 1)
    p1, p2 = fischer_project(x1)
    assert Dirac().apply(p1).is_zero()
    assert p1 + p2 == x1
    with pytest.raises(NotHarmonicError):
        fischer_project(x1 * x1)


def test_repr_kernel_examples():
    p, q = repr_kernel(0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert p == Multivector.scalar(3, 1.0) and q.is_zero()
    for m in (3, 4, 5):
        lam = (m - 2) / 2
        xp = np.eye(m)[0]
        for k in range(1, 6):
            p, _ = repr_kernel(k, xp, xp)
            want = (k + 2 * lam) / (2 * lam) * math.comb(int(round(k + 2 * lam - 1)), k) if (2 * lam).is_integer() else None
            assert complex(p.scalar_part()).real == pytest.approx(want, rel=1e-13)
            assert complex(p.scalar_part()).real == pytest.approx((k + 2 * lam) / (2 * lam) * gegenbauer(k, lam, 1.0), rel=1e-13)
    with pytest.raises(ValueError):
        repr_kernel(1, [1.0, 1.0], [1.0, 0.0])


def test_sphere_moments():
    assert sphere_moment((1, 0)) == (0, 1)
    q, p = sphere_moment((0, 0, 0))
    assert float(q) * math.pi**p == pytest.approx(sphere_area(3))
    assert sphere_moment((2, 0)) == (Q(1), 1)
    q, p = sphere_moment((2, 0, 0))
    assert float(q) * math.pi**p == pytest.approx(4 * math.pi / 3)


@given(st.lists(st.integers(0, 4), min_size=2, max_size=4))
def test_sphere_moment_against_quadrature(alpha):
    m = len(alpha)
    rule = sphere_rule(m, sum(alpha) + 2)
    num = rule.integrate(np.prod(rule.nodes ** np.array(alpha), axis=1))
    q, p = sphere_moment(alpha)
    assert num == pytest.approx(float(q) * math.pi**p, abs=1e-12)


@pytest.mark.parametrize("m,k", [(2, 2), (3, 1), (3, 2)])
def test_orthonormalize_gives_identity_gram(m, k):
    b = build_basis(m, k, "monogenic")
    ortho = orthonormalize(b)
    assert np.allclose(gram_matrix(ortho), np.eye(len(ortho)), atol=1e-12)


def test_invariant_suites():
    for rep in (
        suites.monogenic_check((2, 3), 2),
        suites.gamma_eigen_check((2, 3), 2),
        suites.funk_hecke_check(3, 4),
        suites.reproducing_kernel_check((2, 3), 3),
        suites.pin_equivariance_check(2),
    ):
        assert rep.passed, rep.to_dict()
        assert rep.checked > 0


def test_pin_sign_is_minus_one_for_single_reflection():
    from gfourier.harmonics import pin_action

    roots = RootSystem.z2m(2, Q(1, 2))
    f = QuasiPolynomial.monomial(2, (1, 2))
    xv = MultXVec()
    assert pin_action(xv.apply(f), roots, 0) == -1 * xv.apply(pin_action(f, roots, 0))
    # applying the same reflection twice gives s^2 = -|alpha|^2 / ... a scalar multiple of f
    twice = pin_action(pin_action(f, roots, 0), roots, 0)
    ratio = twice.compile()(np.array([[0.3, 0.7]]))[0, 0] / f.compile()(np.array([[0.3, 0.7]]))[0, 0]
    assert twice == f * Q(int(round(ratio.real)))
