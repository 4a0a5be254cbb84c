"""Kernel of the radially deformed Hermite semigroup (no Dunkl part, ``mu = m``).

Two evaluators are provided: the general one, valid for ``Re omega > 0`` and
on the imaginary axis away from ``pi Z`` (principal branches throughout), and
the dedicated ``omega = i pi / 2`` series written with ordinary Bessel
functions.  They are independent routes to the same Fourier kernel.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import gammaln

from ..specfun import gegenbauer_table, jhat_ladder
from ._common import PairGeometry, adaptive_sum, assemble, by_z_bucket
from .params import ExcludedParameterError, ParameterError

__all__ = ["deformed_kernel", "deformed_kernel_fourier", "deformed_kernel_at_origin"]


def _gamma_k(k, m: int, c: float) -> float:
    return (2 * k + m + c) / (1 + c)


def _orders(kmax: int, m: int, c: float) -> list:
    """Bessel orders used by both series: ``gamma_k/2 - 1`` and ``gamma_{k-1}/2``."""
    out = {_key(_gamma_k(k, m, c) / 2 - 1): _gamma_k(k, m, c) / 2 - 1 for k in range(kmax + 1)}
    out.update({_key(_gamma_k(k, m, c) / 2): _gamma_k(k, m, c) / 2 for k in range(kmax)})
    return list(out.values())


def _coefficient_tables(kmax: int, lam: float, w):
    """``((k+2lam)/(2lam)) C_k``, ``(k/(2lam)) C_k`` and ``C_{k-1}^{lam+1}`` (row k), finite at ``lam = 0``."""
    g = gegenbauer_table(kmax, lam, w, "limit_scaled")
    ks = np.arange(kmax + 1).reshape((-1,) + (1,) * np.ndim(w))
    with np.errstate(invalid="ignore", divide="ignore"):
        first = np.where(ks == 0, 1.0, (ks + 2 * lam) / (2.0 * (ks + lam)) * g)
        second = np.where(ks == 0, 0.0, ks / (2.0 * (ks + lam)) * g)
    c1 = np.zeros_like(g)
    if kmax >= 1:
        c1[1:] = gegenbauer_table(kmax - 1, lam + 1, w, "standard")
    return first, second, c1


def _jhat_orders(orders, z) -> dict:
    """``bessel_jhat(nu, z)`` for many orders, one downward ladder per residue class of ``nu`` mod 1."""
    groups: dict = {}
    for nu in orders:
        frac = round(nu - math.floor(nu + 1e-12), 10) % 1.0
        groups.setdefault(frac, []).append(nu)
    out = {}
    for members in groups.values():
        lo = min(members)
        span = int(round(max(members) - lo))
        lad = jhat_ladder(lo, span, z)
        for nu in members:
            out[_key(nu)] = lad[int(round(nu - lo))]
    return out


def _key(nu: float) -> float:
    return round(nu, 9)


def _check(c: float, omega: complex) -> complex:
    if c <= -1:
        raise ParameterError("deformation parameter c must exceed -1")
    om = complex(omega)
    if om.real < 0:
        raise ParameterError("need Re(omega) >= 0")
    if om.real == 0:
        q = om.imag / math.pi
        if abs(q - round(q)) < 1e-12:
            raise ExcludedParameterError("omega = i eta needs eta outside pi Z")
    return om


def deformed_kernel(geo: PairGeometry, c: float, omega: complex, tol: float = 1e-14) -> np.ndarray:
    """``K(x, y; omega)`` from the holomorphic series."""
    om = _check(c, omega)
    return by_z_bucket(geo, lambda g: _deformed_series(g, c, om, tol))


def _deformed_series(geo: PairGeometry, c: float, om: complex, tol: float) -> np.ndarray:
    m = geo.m
    lam = (m - 2) / 2.0
    delta = 1 + (m - 1) / (1 + c)
    sh = cmath.sinh(om)
    log2sh = cmath.log(2 * sh)
    coth = cmath.cosh(om) / sh
    zeta = 1j * geo.z / sh
    pos = geo.z > 0
    logz = np.log(np.where(pos, geo.z, 1.0))

    def log_alpha(k):
        return math.log(2.0) + om * delta / 2 - _gamma_k(k, m, c) / 2 * log2sh

    def zpow(p):
        # z^p with 0^0 = 1; non-positive p only occurs multiplied by z below
        if p == 0:
            return np.ones(geo.n)
        return np.where(pos, np.exp(p * logz), 0.0)

    table = {}

    def jt_scaled(nu, extra_log, power):
        # exp(extra_log) * z^power * J~_nu(zeta), with J~ = jhat / Gamma(nu+1), all in log space
        jh = table[_key(nu)]
        lg = extra_log - gammaln(nu + 1)
        if power == 0:
            return np.exp(lg) * jh
        return np.where(pos, np.exp(lg + power * logz), 0.0) * jh

    def build(kmax):
        first, second, c1 = _coefficient_tables(kmax, lam, geo.w)
        table.clear()
        table.update(_jhat_orders(_orders(kmax, m, c), zeta))
        a_rows = np.zeros((kmax + 1, geo.n), dtype=complex)
        b_rows = np.zeros((kmax + 1, geo.n), dtype=complex)
        for k in range(kmax + 1):
            g_k = _gamma_k(k, m, c)
            t1 = jt_scaled(g_k / 2 - 1, log_alpha(k), k / (1 + c))
            a_rows[k] = t1 * first[k]
            if k >= 1:
                g_prev = _gamma_k(k - 1, m, c)
                t2 = jt_scaled(g_prev / 2, log_alpha(k - 1) - cmath.log(2 * sh), (k + c) / (1 + c))
                a_rows[k] += t2 * second[k]
                # B * z: the bivector series with one extra power of z
                b_rows[k] = (-t1 + t2) * c1[k]
        return [a_rows, b_rows]

    thr = (1 + c) * float(np.max(np.abs(zeta), initial=0.0)) + 2
    a, bz = adaptive_sum(build, thr, tol)
    env = np.exp(-coth * (geo.r**2 + geo.s**2) / 2)
    return assemble(geo, env * a, env * bz)


def deformed_kernel_fourier(geo: PairGeometry, c: float, tol: float = 1e-14) -> np.ndarray:
    """``K(x, y; i pi/2)`` from the dedicated series with ``alpha_k = exp(-i pi k / (2(1+c)))``."""
    if c <= -1:
        raise ParameterError("deformation parameter c must exceed -1")
    return by_z_bucket(geo, lambda g: _fourier_series(g, c, tol))


def _fourier_series(geo: PairGeometry, c: float, tol: float) -> np.ndarray:
    m = geo.m
    lam = (m - 2) / 2.0
    delta = 1 + (m - 1) / (1 + c)
    pos = geo.z > 0
    logh = np.log(np.where(pos, geo.z / 2.0, 1.0))
    base = (delta - 2) / 2

    table = {}

    def zj(nu, shift):
        # z^(-(delta-2)/2 + shift) J_nu(z), with nu = (delta-2)/2 + shift + p and p >= 0,
        # written as 2^(-(delta-2)/2 + shift) (z/2)^p jhat_nu(z) / Gamma(nu + 1)
        p = nu - base - shift
        jh = table[_key(nu)]
        lg = (shift - base) * math.log(2.0) - gammaln(nu + 1)
        if abs(p) < 1e-15:
            return np.exp(lg) * jh
        return np.where(pos, np.exp(lg + p * logh), 0.0) * jh

    def build(kmax):
        first, second, c1 = _coefficient_tables(kmax, lam, geo.w)
        table.clear()
        table.update(_jhat_orders(_orders(kmax, m, c), geo.z))
        a_rows = np.zeros((kmax + 1, geo.n), dtype=complex)
        b_rows = np.zeros((kmax + 1, geo.n), dtype=complex)
        for k in range(kmax + 1):
            ak = cmath.exp(-1j * math.pi * k / (2 * (1 + c)))
            g_k = _gamma_k(k, m, c)
            j1 = zj(g_k / 2 - 1, 0.0)
            a_rows[k] = ak * j1 * first[k]
            if k >= 1:
                ap = cmath.exp(-1j * math.pi * (k - 1) / (2 * (1 + c)))
                j2 = zj(_gamma_k(k - 1, m, c) / 2, 0.0)
                a_rows[k] += -1j * ap * j2 * second[k]
                # z * z^(-delta/2) = z^(-(delta-2)/2)
                b_rows[k] = (-ak * j1 - 1j * ap * j2) * c1[k]
        return [a_rows, b_rows]

    thr = (1 + c) * float(np.max(geo.z, initial=0.0)) + 2
    a, bz = adaptive_sum(build, thr, tol)
    return assemble(geo, a, bz)


def deformed_kernel_at_origin(m: int, c: float) -> float:
    """``K(0, y) = 1 / (2^(gamma_0/2 - 1) Gamma(gamma_0/2))`` at ``omega = i pi / 2``."""
    g0 = _gamma_k(0, m, c)
    return 1.0 / (2 ** (g0 / 2 - 1) * math.gamma(g0 / 2))
