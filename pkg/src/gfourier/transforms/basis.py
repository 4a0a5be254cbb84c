"""Hermite-type eigenbases of the transform families and their predicted eigenvalues."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..exactpoly import QuasiPolynomial, RootSystem
from ..exactpoly.checks import psi_c
from ..exactpoly.operators import MultRPow, MultXVec
from ..harmonics import build_basis
from ..kernels import KernelParams
from ..specfun import double_factorial_ratio, laguerre, laguerre_coefficients

__all__ = [
    "BASIS_FAMILIES",
    "BasisIndex",
    "InvalidIndexError",
    "angular_element",
    "angular_dimension",
    "eval_basis",
    "symbolic_basis",
    "predicted_eigenvalue",
    "family_basis",
    "as_fraction",
]

BASIS_FAMILIES = ("scalar_hermite", "dunkl_hermite", "radial_hermite", "clifford_hermite", "deformed")


class InvalidIndexError(ValueError):
    pass


@dataclass(frozen=True)
class BasisIndex:
    """``j``: radial index (full index ``p`` / ``t`` for the Clifford families); ``k``: angular degree."""

    family: str
    j: int
    k: int
    member: int = 0

    def __post_init__(self):
        if self.family not in BASIS_FAMILIES:
            raise InvalidIndexError(f"unknown basis family {self.family!r}")
        if self.j < 0 or self.k < 0 or self.member < 0:
            raise InvalidIndexError("indices must be non-negative")

    def label(self) -> str:
        return f"{self.family}({self.j},{self.k},{self.member})"


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    return Fraction(v).limit_denominator(10**6)


def _angular_kind(family: str) -> str:
    if family == "dunkl_hermite":
        return "dunkl_harmonic"
    if family in ("clifford_hermite", "deformed"):
        return "monogenic"
    return "harmonic"


def _roots_for(params: KernelParams | None, m: int) -> RootSystem | None:
    if params is None or params.family != "dunkl_z2m":
        return None
    return RootSystem.z2m(m, [as_fraction(k) for k in params.kappa_vector])


@lru_cache(maxsize=None)
def _angular_basis(m: int, k: int, kind: str, kappa: tuple):
    roots = RootSystem.z2m(m, list(kappa)) if kind.startswith("dunkl") else None
    return build_basis(m, k, kind, roots)


def _basis_for(idx: BasisIndex, m: int, params: KernelParams | None):
    kind = _angular_kind(idx.family)
    roots = _roots_for(params, m)
    kappa = tuple(roots.kappa) if roots is not None else ()
    if kind.startswith("dunkl") and roots is None:
        kappa = tuple(Fraction(0) for _ in range(m))
    return _angular_basis(m, idx.k, kind, kappa)


def angular_dimension(idx: BasisIndex, m: int, params: KernelParams | None = None) -> int:
    return len(_basis_for(idx, m, params))


def angular_element(idx: BasisIndex, m: int, params: KernelParams | None = None) -> QuasiPolynomial:
    basis = _basis_for(idx, m, params)
    if idx.member >= len(basis):
        raise InvalidIndexError(f"member {idx.member} outside angular basis of dimension {len(basis)}")
    return basis.elements[idx.member]


def _mu(m: int, params: KernelParams | None) -> Fraction:
    if params is not None and params.family == "dunkl_z2m":
        return m + 2 * sum(as_fraction(k) for k in params.kappa_vector)
    return Fraction(m)


def symbolic_basis(idx: BasisIndex, m: int, params: KernelParams | None = None) -> QuasiPolynomial:
    """Exact quasi-polynomial form (Gaussian ``exp(-r^2/2)``); not available for radial ``a != 2``."""
    ang = angular_element(idx, m, params)
    fam = idx.family
    if fam == "deformed":
        c = as_fraction(params.c if params is not None else 0)
        return psi_c(c, idx.j, idx.k, ang, RootSystem.trivial(m))
    if fam == "radial_hermite":
        a = params.a if params is not None else 2
        if a != 2:
            raise InvalidIndexError("the radial family with a != 2 has no Gaussian quasi-polynomial form")
    if fam == "clifford_hermite":
        half, odd = divmod(idx.j, 2)
        alpha = Fraction(m, 2) + idx.k - 1 + odd
        base = ang.with_terms(ang.terms, gaussian=True)
        if odd:
            base = MultXVec().apply(base)
    else:
        half = idx.j
        alpha = _mu(m, params) / 2 + idx.k - 1
        base = ang.with_terms(ang.terms, gaussian=True)
    out = QuasiPolynomial.zero(m, True)
    for i, coef in enumerate(laguerre_coefficients(half, alpha)):
        if coef:
            out = out + MultRPow(2 * i).apply(base) * coef
    return out.canonical()


def _angular_values(ang: QuasiPolynomial, x: np.ndarray) -> np.ndarray:
    return ang.compile()(x)


def eval_basis(idx: BasisIndex, params: KernelParams | None, x) -> np.ndarray:
    """Numeric values ``(N, 2^m)`` from floating Laguerre recurrences and the exact angular part."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m = x.shape[1]
    ang = angular_element(idx, m, params)
    r2 = np.sum(x * x, axis=1)
    r = np.sqrt(r2)
    h = _angular_values(ang, x)
    fam = idx.family
    if fam in ("scalar_hermite", "dunkl_hermite"):
        alpha = float(_mu(m, params)) / 2 + idx.k - 1
        rad = laguerre(idx.j, alpha, r2) * np.exp(-r2 / 2)
        return h * rad[:, None]
    if fam == "radial_hermite":
        a = params.a if params is not None else 2.0
        alpha = (m + 2 * idx.k - 2) / a
        rad = laguerre(idx.j, alpha, (2 / a) * r**a) * np.exp(-(r**a) / a)
        return h * rad[:, None]
    half, odd = divmod(idx.j, 2)
    if fam == "clifford_hermite":
        alpha = m / 2 + idx.k - 1 + odd
        rad = laguerre(half, alpha, r2) * np.exp(-r2 / 2)
        if odd:
            h = _left_vector(x, h)
        return h * rad[:, None]
    # deformed: prefactor, r^(beta_ell) and Laguerre in r^2 with gamma_ell-dependent parameter
    c = float(params.c if params is not None else 0.0)
    g = (2 * idx.k + m + c) / (1 + c)
    alpha = g / 2 - 1 + odd
    pref = (2 * (1 + c)) ** idx.j * math.factorial(half) * (-1 if odd else 1)
    beta = -c / (1 + c) * idx.k
    with np.errstate(divide="ignore", invalid="ignore"):
        rb = np.where(r > 0, r**beta, 0.0 if beta > 0 else 1.0) if beta != 0 else np.ones_like(r)
    rad = pref * laguerre(half, alpha, r2) * rb * np.exp(-r2 / 2)
    if odd:
        h = _left_vector(x, h)
    return h * rad[:, None]


def _left_vector(x: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Left Clifford multiplication by the vector ``x`` (Cl(0, m))."""
    m = x.shape[1]
    stacked = _vector_matrices(m)
    size = stacked.shape[0]
    parts = (vals @ stacked).reshape(vals.shape[0], m, size)
    return np.einsum("ni,nic->nc", x, parts)


@lru_cache(maxsize=None)
def _vector_matrices(m: int) -> np.ndarray:
    tab = _table(m)
    return np.concatenate([tab.left_matrix(1 << i) for i in range(m)], axis=1)


@lru_cache(maxsize=None)
def _table(m: int):
    from ..multivector import ProductTable

    return ProductTable(m)


def predicted_eigenvalue(params: KernelParams, idx: BasisIndex) -> complex:
    """Closed-form eigenvalue of the transform ``params`` on basis function ``idx``."""
    f, m, j, k = params.family, params.m, idx.j, idx.k
    if f in ("classical", "fractional"):
        _need(idx, "scalar_hermite")
        al = math.pi / 2 if f == "classical" else params.alpha
        return cmath.exp(-1j * al * (2 * j + k))
    if f == "dunkl_z2m":
        _need(idx, "dunkl_hermite")
        return (-1j) ** (2 * j + k)
    if f == "radial":
        _need(idx, "radial_hermite")
        return cmath.exp(-1j * math.pi * (j + k / params.a))
    if f == "cft":
        _need(idx, "clifford_hermite")
        s = 1 if params.sign == "-" else -1  # the factor (-+1)
        half, odd = divmod(j, 2)
        if not odd:
            return complex((-1) ** (half + k) * s**k)
        return (1j**m) * (-1) ** (half + 1) * s ** (k + m - 1)
    if f == "cft_fractional":
        _need(idx, "clifford_hermite")
        al, be = params.alpha, params.beta
        half, odd = divmod(j, 2)
        if not odd:
            return cmath.exp(-1j * al * (2 * half + k)) * cmath.exp(-1j * be * k)
        return cmath.exp(-1j * al * (2 * half + 1 + k)) * cmath.exp(1j * be * (k + m - 1))
    if f == "cft_class":
        _need(idx, "clifford_hermite")
        return complex(class_eigenvalue(m, params.j, j, k))
    if f == "deformed_semigroup":
        _need(idx, "deformed")
        om = complex(params.omega)
        return cmath.exp(-om * j) * cmath.exp(-om * k / (1 + params.c))
    raise InvalidIndexError(f"no eigenbasis recorded for family {f!r}")


def class_eigenvalue(m: int, jj: int, p_full: int, k: int) -> Fraction:
    """Exact eigenvalue of the ``jj``-th transform of the even-dimensional class on ``psi_{p_full, k}``."""
    if m % 2 or not 0 <= jj <= m - 2:
        raise InvalidIndexError("need even m and 0 <= j <= m - 2")
    p, odd = divmod(p_full, 2)
    sgn_mj = (-1) ** (m // 2 + jj)
    if (jj + k) % 2 == 0:
        ratio = double_factorial_ratio(k + jj - 1, k + m - jj - 3)
        return (sgn_mj if not odd else 1) * ratio * (-1) ** p
    ratio = double_factorial_ratio(k + jj, k + m - jj - 2)
    if not odd:
        return ratio * (-1) ** (p + 1)
    return sgn_mj * ratio * (-1) ** p


def _need(idx: BasisIndex, family: str) -> None:
    if idx.family != family:
        raise InvalidIndexError(f"expected a {family} index, got {idx.family}")


def family_basis(params: KernelParams) -> str:
    """Name of the eigenbasis family matching a transform family."""
    return {
        "classical": "scalar_hermite",
        "fractional": "scalar_hermite",
        "dunkl_z2m": "dunkl_hermite",
        "radial": "radial_hermite",
        "cft": "clifford_hermite",
        "cft_fractional": "clifford_hermite",
        "cft_class": "clifford_hermite",
        "deformed_semigroup": "deformed",
    }[params.family]
