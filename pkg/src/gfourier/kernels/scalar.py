"""Scalar-valued kernels: classical, fractional, Dunkl (Z2^m) and radially deformed."""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import gammaln

from ..specfun import bessel_jhat, bessel_jtilde, gegenbauer_table
from ._common import PairGeometry, adaptive_sum, as_points, bessel_e_table
from .params import ParameterError

__all__ = [
    "classical_kernel",
    "fractional_kernel",
    "dunkl_z2m_kernel",
    "radial_kernel",
    "radial_rank1_kernel",
]


def _plane_wave_series(geo: PairGeometry, lam: float, zarg, tol: float) -> np.ndarray:
    """``sum_k (-i)^k Gamma(lam+1) (zarg/2)^(-lam) J_{k+lam}(zarg) G_k(w)``."""

    def build(kmax):
        e = bessel_e_table(lam, kmax, zarg)
        g = gegenbauer_table(kmax, lam, geo.w, "limit_scaled")
        ph = (-1j) ** np.arange(kmax + 1)
        return [ph[:, None] * e * g]

    return adaptive_sum(build, float(np.max(np.abs(zarg), initial=0.0)), tol)[0]


def classical_kernel(geo: PairGeometry, mode: str = "exp", tol: float = 1e-14) -> np.ndarray:
    """``exp(-i<x,y>)``, either directly or by its Gegenbauer-Bessel series."""
    if geo.m < 2 and mode == "series":
        raise ParameterError("series mode needs m >= 2")
    if mode == "exp":
        return np.exp(-1j * geo.inner)
    if mode != "series":
        raise ParameterError(f"unknown mode {mode!r}")
    lam = (geo.m - 2) / 2.0
    return _plane_wave_series(geo, lam, geo.z, tol)


def fractional_kernel(geo: PairGeometry, alpha: float) -> np.ndarray:
    """Chirped plane wave; the constant ``(pi (1 - e^{-2i alpha}))^(-m/2)`` is kept apart."""
    sa = math.sin(alpha)
    cot = math.cos(alpha) / sa
    return np.exp(-1j * geo.inner / sa + 0.5j * cot * (geo.r**2 + geo.s**2))


def _rank1_bracket(kappa: float, u, prod) -> np.ndarray:
    return bessel_jtilde(kappa - 0.5, u) - 0.5j * prod * bessel_jtilde(kappa + 0.5, u)


def dunkl_z2m_kernel(geo: PairGeometry, kappa) -> np.ndarray:
    """Product over coordinates of the rank-one Dunkl brackets."""
    out = np.ones(geo.n, dtype=complex)
    for i, k in enumerate(kappa):
        if k < -0.5:
            raise ParameterError("multiplicities must be >= -1/2")
        prod = geo.x[:, i] * geo.y[:, i]
        out = out * _rank1_bracket(float(k), np.abs(prod), prod)
    return out


def radial_kernel(geo: PairGeometry, a: float, mode: str = "series", tol: float = 1e-14) -> np.ndarray:
    """Kernel of the ``a``-deformed transform (without its normalising constant)."""
    m = geo.m
    lam = (m - 2) / 2.0
    if a <= 0:
        raise ParameterError("a must be positive")
    if mode == "closed":
        if a == 2:
            return np.exp(-1j * geo.inner)
        if a == 1:
            if m < 2:
                raise ParameterError("closed a = 1 form needs m >= 2")
            arg = np.sqrt(np.maximum(2.0 * (geo.z + geo.inner), 0.0))
            return math.gamma((m - 1) / 2.0) * bessel_jtilde((m - 3) / 2.0, arg) + 0j
        raise ParameterError("closed form is only known for a = 1 and a = 2")
    if mode != "series":
        raise ParameterError(f"unknown mode {mode!r}")
    nu0 = 2.0 * lam / a
    zeta = (2.0 / a) * geo.z ** (a / 2.0)
    pos = zeta > 0
    logh = np.log(np.where(pos, zeta / 2.0, 1.0))

    def build(kmax):
        g = gegenbauer_table(kmax, lam, geo.w, "limit_scaled")
        rows = np.empty((kmax + 1, geo.n), dtype=complex)
        for k in range(kmax + 1):
            nu = nu0 + 2.0 * k / a
            jh = bessel_jhat(nu, zeta)
            if k == 0:
                fac = np.ones(geo.n)
            else:
                fac = np.where(pos, np.exp(gammaln(nu0 + 1) - gammaln(nu + 1) + (nu - nu0) * logh), 0.0)
            rows[k] = cmath.exp(-1j * math.pi * k / a) * fac * jh * g[k]
        return [rows]

    thr = a * float(np.max(zeta, initial=0.0)) / 2.0
    return adaptive_sum(build, thr, tol)[0]


def radial_rank1_kernel(x, y, kappa: float, a: float) -> np.ndarray:
    """Rank-one kernel ``J~_{(2k-1)/a}(u) + x y (a i)^(-2/a) J~_{(2k+1)/a}(u)``, ``u = (2/a)|xy|^(a/2)``."""
    if a <= 0 or 2 * kappa <= 1 - a:
        raise ParameterError("rank-one kernel needs a > 0 and 2 kappa > 1 - a")
    xy = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    u = (2.0 / a) * np.abs(xy) ** (a / 2.0)
    factor = complex(a * 1j) ** (-2.0 / a)
    return bessel_jtilde((2 * kappa - 1) / a, u) + xy * factor * bessel_jtilde((2 * kappa + 1) / a, u)


def radial_rank1_from_points(geo: PairGeometry, kappa: float, a: float) -> np.ndarray:
    if geo.m != 1:
        raise ParameterError("rank-one kernel lives on the real line")
    return radial_rank1_kernel(geo.x[:, 0], geo.y[:, 0], kappa, a)


def points_1d(x) -> np.ndarray:
    return as_points(np.reshape(np.asarray(x, dtype=float), (-1, 1)), 1)
