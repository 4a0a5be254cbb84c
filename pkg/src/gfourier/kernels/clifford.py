"""Clifford-valued kernels with support on scalars and bivectors.

Every kernel here has the shape ``S + (x ^ y) C`` with scalar functions
``S`` and ``C`` of ``s = <x,y>`` and ``t = |x ^ y|`` (or of ``z = |x||y|`` and
``w = s/z``).  Internally the bivector part is carried as
``(xi ^ eta) * (z C)`` with unit directions, which stays finite at ``z = 0``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..specfun import double_factorial_ratio, gegenbauer_table
from ._common import PairGeometry, adaptive_sum, assemble, bessel_e_table, jstar, sinc
from .params import OpenProblemError, ParameterError

__all__ = [
    "cft_kernel",
    "frac_cft_kernel",
    "cft_class_kernel",
    "even_explicit_parts",
    "cft_series_parts",
    "flip_y",
]

SQRT_HALF_PI = math.sqrt(math.pi / 2)


def _standard_table(kmax: int, lam: float, w) -> np.ndarray:
    """``C_k^lam(w)``; at ``lam = 0`` only the ``k = 0`` row survives."""
    if lam == 0:
        out = np.zeros((kmax + 1,) + np.shape(w))
        out[0] = 1.0
        return out
    return gegenbauer_table(kmax, lam, w, "standard")


def flip_y(geo: PairGeometry) -> PairGeometry:
    """Geometry of the pairs ``(x, -y)``."""
    return PairGeometry(
        geo.x, -geo.y, geo.r, geo.s, geo.z, -geo.inner, -geo.w, geo.t, -geo.wedge, -geo.unit_wedge
    )


# --------------------------------------------------------------------- CFT


def cft_series_parts(lam: float, w, z, tol: float = 1e-14):
    """``(A_lam, B_lam, z C_lam)`` of the minus kernel's series as functions of ``w`` and ``z``.

    ``i^(2 lam + 2)`` is taken on the principal branch, so any ``lam >= 0`` is accepted.
    """
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    im = cmath.exp(1j * math.pi * (lam + 1))
    if abs(im.imag) < 1e-15:
        im = im.real

    def build(kmax):
        ks = np.arange(kmax + 1)
        sgn = (-1.0) ** ks
        e0 = bessel_e_table(lam, kmax, z)
        e1 = bessel_e_table(lam + 1, kmax, z)
        g = gegenbauer_table(kmax, lam, w, "limit_scaled")
        cst = _standard_table(kmax, lam, w)
        c1 = gegenbauer_table(kmax, lam + 1, w, "standard")
        a = 0.5 * (im + sgn)[:, None] * e0 * cst
        b = -0.5 * (im - sgn)[:, None] * e0 * g
        # C term, multiplied by z: sum_{k>=1} of (im + (-1)^k) E_{k-1}(lam+1) C_{k-1}^{lam+1}
        cz = np.zeros_like(a)
        cz[1:] = (-0.5 / (lam + 1)) * (im + sgn[1:])[:, None] * e1[:-1] * c1[:-1] * z
        return [a, b, cz]

    return tuple(adaptive_sum(build, float(np.max(z, initial=0.0)), tol))


def _cft_minus_series(geo: PairGeometry, tol: float) -> np.ndarray:
    a, b, cz = cft_series_parts((geo.m - 2) / 2.0, geo.w, geo.z, tol)
    return assemble(geo, a + b, cz)


def even_explicit_parts(m: int, s, t):
    """``(A*, B*, C*)`` of the even-dimensional closed form, for ``m >= 2`` even."""
    s = np.asarray(s, dtype=complex)
    a = np.zeros(np.broadcast(s, t).shape, dtype=complex)
    b = np.zeros_like(a)
    c = np.zeros_like(a)
    h = m // 2
    if m == 2:
        # B* = -J*_{-1/2}, C* = -J*_{1/2}
        return a, -jstar(-0.5, t) + 0j, -jstar(0.5, t) + 0j
    for ell in range(int(math.floor(m / 4 - 3 / 4)) + 1):
        coef = math.gamma(h) / (2**ell * math.factorial(ell) * math.gamma(h - 2 * ell - 1))
        a = a + s ** (h - 2 - 2 * ell) * coef * jstar((m - 2 * ell - 3) / 2, t)
    for ell in range(int(math.floor(m / 4 - 1 / 2)) + 1):
        coef = math.gamma(h) / (2**ell * math.factorial(ell) * math.gamma(h - 2 * ell))
        sp = s ** (h - 1 - 2 * ell)
        b = b - sp * coef * jstar((m - 2 * ell - 3) / 2, t)
        c = c - sp * coef * jstar((m - 2 * ell - 1) / 2, t)
    return a, b, c


def _cft_minus_closed(geo: PairGeometry) -> np.ndarray:
    m = geo.m
    if m % 2:
        raise OpenProblemError(
            "no closed form is known for the Clifford-Fourier kernel in odd dimension; use series mode"
        )
    if m == 2:
        return assemble(geo, np.cos(geo.t), geo.z * sinc(geo.t))
    a, b, c = even_explicit_parts(m, geo.inner, geo.t)
    pref = (-1) ** (m // 2) * SQRT_HALF_PI
    return assemble(geo, pref * (a + b), pref * c * geo.z)


def cft_kernel(geo: PairGeometry, sign: str = "-", mode: str = "series", tol: float = 1e-14) -> np.ndarray:
    """``K_-`` or ``K_+``; the plus kernel is ``conj(K_-(x, -y))``."""
    if sign not in ("+", "-"):
        raise ParameterError("sign must be '+' or '-'")
    if mode not in ("series", "closed"):
        raise ParameterError(f"unknown mode {mode!r}")
    fn = _cft_minus_series if mode == "series" else (lambda g, _tol: _cft_minus_closed(g))
    if sign == "-":
        return fn(geo, tol)
    return np.conj(fn(flip_y(geo), tol))


# --------------------------------------------------------- fractional CFT


def _frac_cft_series(geo: PairGeometry, alpha: float, beta: float, tol: float) -> np.ndarray:
    m = geo.m
    lam = (m - 2) / 2.0
    sa = math.sin(alpha)
    zt = geo.z / sa

    def build(kmax):
        ks = np.arange(kmax + 1)
        ph = (-1j) ** ks
        up = np.exp(1j * beta * (ks + 2 * lam))
        down = np.exp(-1j * beta * ks)
        e0 = bessel_e_table(lam, kmax, zt)
        e1 = bessel_e_table(lam + 1, kmax, zt)
        g = gegenbauer_table(kmax, lam, geo.w, "limit_scaled")
        cst = _standard_table(kmax, lam, geo.w)
        c1 = gegenbauer_table(kmax, lam + 1, geo.w, "standard")
        a = -0.5 * (ph * (up - down))[:, None] * e0 * cst
        b = 0.5 * (ph * (up + down))[:, None] * e0 * g
        cz = np.zeros_like(a)
        coef = (ph * (up - down))[1:] / (2 * (lam + 1) * sa)
        cz[1:] = coef[:, None] * e1[:-1] * c1[:-1] * geo.z
        return [a + b, cz]

    sc, bz = adaptive_sum(build, float(np.max(np.abs(zt), initial=0.0)), tol)
    return assemble(geo, sc, bz)


def _frac_cft_closed(geo: PairGeometry, alpha: float, beta: float) -> np.ndarray:
    m = geo.m
    if m % 2:
        raise OpenProblemError("no closed form is known for the fractional Clifford-Fourier kernel in odd dimension")
    sa = math.sin(alpha)
    q = math.sin(beta) / sa
    if m == 2:
        tq = geo.t * q
        sc = np.cos(tq) * np.exp(-1j * geo.inner * math.cos(beta) / sa)
        bz = q * sinc(tq) * np.exp(-1j * geo.inner * math.cos(beta) / sa) * geo.z
        return assemble(geo, sc, bz)
    h = m // 2
    tb = math.tan(beta)
    ss = q * geo.inner
    ts = q * geo.t
    a = np.zeros(geo.n, dtype=complex)
    b = np.zeros(geo.n, dtype=complex)
    c = np.zeros(geo.n, dtype=complex)
    for ell in range(h - 1):
        _, _, cl = even_explicit_parts(2 * ell + 2, ss, ts)
        a = a + math.comb(h - 2, ell) * (1j * tb) ** ell * cl
    a = 1j * ((m - 2) / 2) * tb * a
    for ell in range(h):
        _, bl, cl = even_explicit_parts(2 * ell + 2, ss, ts)
        wgt = math.comb(h - 1, ell) * (1j * tb) ** ell
        b = b - wgt * bl
        c = c - q * wgt * cl
    pref = SQRT_HALF_PI * cmath.exp(1j * beta * (m - 2) / 2) * math.cos(beta) ** ((m - 2) / 2)
    pref = pref * np.exp(-1j * ss / tb)
    return assemble(geo, pref * (a + b), pref * c * geo.z)


def frac_cft_kernel(geo: PairGeometry, alpha: float, beta: float, mode: str = "series", tol: float = 1e-14) -> np.ndarray:
    """Fractional Clifford-Fourier kernel including its chirp factor."""
    sa = math.sin(alpha)
    if abs(sa) < 1e-12:
        raise ParameterError("alpha = 0 and alpha = +-pi are excluded")
    chirp = np.exp(0.5j * (math.cos(alpha) / sa) * (geo.r**2 + geo.s**2))
    if beta == 0:
        from .scalar import fractional_kernel

        out = np.zeros((geo.n, 1 << geo.m), dtype=complex)
        out[:, 0] = fractional_kernel(geo, alpha)
        return out
    if mode == "closed":
        pole = abs(math.cos(beta)) < 1e-12
        if geo.m > 2 and pole:
            core = _frac_cft_series(geo, alpha, beta, tol)
        else:
            core = _frac_cft_closed(geo, alpha, beta)
    elif mode == "series":
        core = _frac_cft_series(geo, alpha, beta, tol)
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    return core * chirp[:, None]


# ---------------------------------------------------------- CFT class K^j


def _class_closed(geo: PairGeometry, j: int) -> np.ndarray:
    m = geo.m
    s, t = geo.inner, geo.t
    ft = np.zeros(geo.n)
    fh = np.zeros(geo.n)
    g = np.zeros(geo.n)
    if j >= 1:
        for ell in range((j - 1) // 2 + 1):
            coef = math.gamma(j + 1) / (2**ell * math.factorial(ell) * math.gamma(j - 2 * ell))
            ft = ft - s ** (j - 1 - 2 * ell) * coef * jstar((m - 2 * ell - 3) / 2, t)
    for ell in range(j // 2 + 1):
        coef = math.gamma(j + 1) / (2**ell * math.factorial(ell) * math.gamma(j + 1 - 2 * ell))
        sp = s ** (j - 2 * ell)
        fh = fh + sp * coef * jstar((m - 2 * ell - 3) / 2, t)
        g = g + sp * coef * jstar((m - 2 * ell - 1) / 2, t)
    fh = (-1) ** (m // 2 + j) * fh
    return assemble(geo, SQRT_HALF_PI * (ft + fh), SQRT_HALF_PI * g * geo.z)


def _dfr(a: int, b: int) -> float:
    return float(double_factorial_ratio(a, b))


def _class_series(geo: PairGeometry, j: int, tol: float) -> np.ndarray:
    m = geo.m
    lam = (m - 2) / 2.0
    h = m // 2
    even = j % 2 == 0

    def build(kmax):
        # the sums run over k with 2k (+1) <= kmax
        nk = kmax // 2
        e0 = bessel_e_table(lam, kmax, geo.z)
        e1 = bessel_e_table(lam + 1, kmax, geo.z)
        g = gegenbauer_table(kmax, lam, geo.w, "limit_scaled")
        cst = _standard_table(kmax, lam, geo.w)
        c1 = gegenbauer_table(kmax, lam + 1, geo.w, "standard")
        sc = np.zeros((nk, geo.n))
        bz = np.zeros((nk, geo.n))
        for k in range(nk):
            if even:
                r1 = _dfr(2 * k + j - 1, 2 * k + m - j - 1)
                r2 = _dfr(2 * k + j - 1, 2 * k - j + m - 3)
                ft = -(j / (2 * lam)) * (4 * k + m) * r1 * e0[2 * k + 1] * cst[2 * k + 1] if j else 0.0
                fh = (-1) ** h * r2 * e0[2 * k] * g[2 * k]
                gg = (4 * k + m) * r1 * e1[2 * k] * c1[2 * k] / (2 * (lam + 1))
            else:
                r3 = _dfr(2 * k + j - 2, 2 * k + m - j - 2)
                r4 = _dfr(2 * k + j, 2 * k + m - j - 2)
                r5 = _dfr(2 * k + j, 2 * k + m - j)
                ft = -(j / (2 * lam)) * (4 * k + m - 2) * r3 * e0[2 * k] * cst[2 * k]
                fh = (-1) ** (h + 1) * r4 * e0[2 * k + 1] * g[2 * k + 1]
                gg = (4 * k + m + 2) * r5 * e1[2 * k + 1] * c1[2 * k + 1] / (2 * (lam + 1))
            sc[k] = ft + fh
            bz[k] = gg * geo.z
        return [sc, bz]

    sc, bz = adaptive_sum(build, float(np.max(geo.z, initial=0.0)) + 2, tol)
    return assemble(geo, sc, bz)


def cft_class_kernel(geo: PairGeometry, j: int, mode: str = "closed", tol: float = 1e-14) -> np.ndarray:
    m = geo.m
    if m % 2 or not 0 <= j <= m - 2:
        raise ParameterError("need even m and 0 <= j <= m - 2")
    if mode == "closed":
        return _class_closed(geo, j)
    if mode == "series":
        return _class_series(geo, j, tol)
    raise ParameterError(f"unknown mode {mode!r}")
