"""Bessel, Gegenbauer, Laguerre, Gamma and double-factorial primitives.

All numeric routines broadcast over numpy arrays.  The normalised Bessel
function ``jtilde(nu, z) = (z/2)**(-nu) * J_nu(z)`` is entire in ``z``; it is
summed from its power series wherever that series is numerically benign and
taken from ``scipy.special.jv`` otherwise (large real-dominant arguments,
where the alternating series cancels catastrophically).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special as sps

__all__ = [
    "SpecFunContext",
    "DEFAULT_CONTEXT",
    "SeriesNonConvergence",
    "PoleError",
    "bessel_jtilde",
    "bessel_j",
    "bessel_jhat",
    "jhat_ladder",
    "gegenbauer",
    "gegenbauer_table",
    "laguerre",
    "laguerre_coefficients",
    "gamma_fn",
    "double_factorial",
    "double_factorial_ratio",
]


class SeriesNonConvergence(ArithmeticError):
    pass


class PoleError(ValueError):
    pass


@dataclass(frozen=True)
class SpecFunContext:
    tol: float = 1e-13
    max_terms: int = 500

    def __post_init__(self):
        if not 0 < self.tol <= 1e-6:
            raise ValueError("tolerance must lie in (0, 1e-6]")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")


DEFAULT_CONTEXT = SpecFunContext()

# Below this "real extent" the ascending series loses fewer than ~4 digits.
_SERIES_REAL_EXTENT = 8.0


def _is_neg_integer(nu: float) -> bool:
    return nu < 0 and float(nu).is_integer()


def _series_jhat(nu: float, q: np.ndarray, ctx: SpecFunContext) -> np.ndarray:
    """Sum ``sum_n (-q)^n Gamma(nu+1) / (n! Gamma(nu+n+1))`` with ``q = z^2/4``."""
    term = np.ones_like(q)
    total = np.ones_like(q)
    comp = np.zeros_like(q)
    for n in range(ctx.max_terms):
        term = term * (-q) / ((n + 1) * (nu + n + 1))
        # Kahan-compensated accumulation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if n > 2 and np.all(np.abs(term) <= ctx.tol * 1e-3 * np.maximum(np.abs(total), 1e-300)):
            return total
    if np.all(np.abs(term) <= ctx.tol * np.maximum(np.abs(total), 1e-300)):
        return total
    raise SeriesNonConvergence(f"Bessel series for order {nu} did not converge in {ctx.max_terms} terms")


def bessel_jhat(nu: float, z, ctx: SpecFunContext = DEFAULT_CONTEXT) -> np.ndarray:
    """Scaled Bessel function ``Gamma(nu+1) * jtilde(nu, z)``; equals 1 at ``z = 0``.

    Requires ``nu > -1``.  The scaling keeps values representable for orders
    in the hundreds.
    """
    if nu <= -1:
        raise ValueError("scaled Bessel function needs order > -1")
    z = np.asarray(z)
    cplx = np.iscomplexobj(z)
    zc = z.astype(complex) if cplx else z.astype(float)
    # jtilde is even in z
    if cplx:
        zc = np.where(zc.real < 0, -zc, zc)
    else:
        zc = np.abs(zc)
    absz = np.abs(zc)
    real_extent = absz - np.abs(zc.imag) if cplx else absz
    use_series = (real_extent <= _SERIES_REAL_EXTENT) | (absz * absz <= 4.0 * (nu + 1.0))
    out = np.empty(zc.shape, dtype=zc.dtype)
    if np.any(use_series):
        q = (zc[use_series] / 2.0) ** 2
        out[use_series] = _series_jhat(nu, q, ctx)
    rest = ~use_series
    if np.any(rest):
        zr = zc[rest]
        jv = sps.jv(nu, zr)
        logscale = math.lgamma(nu + 1.0) - nu * np.log(zr / 2.0)
        out[rest] = jv * np.exp(logscale)
    return out if out.ndim else out[()]


def bessel_jtilde(nu: float, z, ctx: SpecFunContext = DEFAULT_CONTEXT):
    """``(z/2)**(-nu) J_nu(z)`` as an entire function of ``z``."""
    if _is_neg_integer(nu):
        n = int(-nu)
        z = np.asarray(z)
        return (-1) ** n * (z / 2.0) ** (2 * n) * bessel_jtilde(float(n), z, ctx)
    if nu <= -1:
        # reduce with the three-term recurrence jtilde_{v-1} = v jtilde_v - (z/2)^2 jtilde_{v+1}
        z = np.asarray(z)
        return (nu + 1) * bessel_jtilde(nu + 1, z, ctx) - (z / 2.0) ** 2 * bessel_jtilde(nu + 2, z, ctx)
    jh = bessel_jhat(nu, z, ctx)
    return jh * sps.rgamma(nu + 1.0)


def bessel_j(nu: float, z, ctx: SpecFunContext = DEFAULT_CONTEXT):
    """``J_nu(z)`` with the principal branch of ``(z/2)**nu``."""
    z = np.asarray(z)
    if float(nu).is_integer():
        pref = (z / 2.0) ** int(nu) if nu >= 0 else None
        if pref is None:
            n = int(-nu)
            return (-1) ** n * bessel_j(float(n), z, ctx)
        return pref * bessel_jtilde(nu, z, ctx)
    zc = z.astype(complex) if (np.iscomplexobj(z) or np.any(z < 0)) else z
    return (zc / 2.0) ** nu * bessel_jtilde(nu, z, ctx)


def jhat_ladder(nu0: float, kmax: int, z, ctx: SpecFunContext = DEFAULT_CONTEXT) -> np.ndarray:
    """Scaled Bessel values ``bessel_jhat(nu0 + k, z)`` for ``k = 0..kmax``.

    The two highest orders are evaluated directly; the rest follow from the
    downward recurrence ``jhat_{v-1} = jhat_v - (z/2)^2 jhat_{v+1} / (v (v+1))``,
    which is stable in the downward direction.  Result has shape
    ``(kmax + 1,) + z.shape``.
    """
    z = np.asarray(z)
    dtype = complex if np.iscomplexobj(z) else float
    out = np.empty((kmax + 1,) + z.shape, dtype=dtype)
    out[kmax] = bessel_jhat(nu0 + kmax, z, ctx)
    if kmax == 0:
        return out
    out[kmax - 1] = bessel_jhat(nu0 + kmax - 1, z, ctx)
    q = (z / 2.0) ** 2
    for k in range(kmax - 1, 0, -1):
        v = nu0 + k
        out[k - 1] = out[k] - q * out[k + 1] / (v * (v + 1.0))
    return out


# ---------------------------------------------------------------- Gegenbauer


def gegenbauer_table(kmax: int, lam: float, w, mode: str = "standard") -> np.ndarray:
    """Rows ``k = 0..kmax`` of ``C_k^lam(w)`` (``mode='standard'``) or of the
    reproducing-kernel normalisation ``((k+lam)/lam) C_k^lam(w)``
    (``mode='limit_scaled'``, continuous at ``lam = 0`` where it is ``2 T_k``).
    """
    w = np.asarray(w, dtype=float)
    out = np.empty((kmax + 1,) + w.shape)
    out[0] = 1.0
    if mode == "standard":
        if lam < 0 or (lam == 0 and kmax >= 1):
            raise ValueError("standard Gegenbauer mode needs lambda > 0")
        if kmax >= 1:
            out[1] = 2.0 * lam * w
        for k in range(2, kmax + 1):
            out[k] = (2.0 * w * (k + lam - 1) * out[k - 1] - (k + 2 * lam - 2) * out[k - 2]) / k
        return out
    if mode != "limit_scaled":
        raise ValueError(f"unknown Gegenbauer mode {mode!r}")
    if lam == 0:
        if kmax >= 1:
            out[1] = w
        for k in range(2, kmax + 1):
            out[k] = 2.0 * w * out[k - 1] - out[k - 2]
        out[1:] *= 2.0
        return out
    if lam < 0:
        raise ValueError("limit_scaled mode needs lambda >= 0")
    std = gegenbauer_table(kmax, lam, w, "standard")
    ks = np.arange(kmax + 1).reshape((-1,) + (1,) * w.ndim)
    return std * (ks + lam) / lam


def gegenbauer(k: int, lam: float, w, mode: str = "standard"):
    if k < 0:
        raise ValueError("degree must be non-negative")
    res = gegenbauer_table(k, lam, w, mode)[k]
    return res if np.ndim(res) else float(res)


# ------------------------------------------------------------------ Laguerre


def laguerre(j: int, alpha: float, t):
    """Generalised Laguerre polynomial ``L_j^alpha(t)`` by forward recurrence."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    t = np.asarray(t)
    prev = np.ones_like(t, dtype=np.result_type(t, float))
    if j == 0:
        return prev if prev.ndim else prev[()]
    cur = 1.0 + alpha - t
    for n in range(1, j):
        prev, cur = cur, ((2 * n + alpha + 1 - t) * cur - (n + alpha) * prev) / (n + 1)
    return cur if np.ndim(cur) else cur[()]


def laguerre_coefficients(j: int, alpha) -> list[Fraction]:
    """Exact power-basis coefficients of ``L_j^alpha`` for rational ``alpha``."""
    alpha = Fraction(alpha)
    coeffs = []
    for i in range(j + 1):
        # binom(j + alpha, j - i) = prod_{s=1}^{j-i} (alpha + i + s) / s
        b = Fraction(1)
        for s in range(1, j - i + 1):
            b *= (alpha + i + s) / s
        coeffs.append((-1) ** i * b / math.factorial(i))
    return coeffs


# --------------------------------------------------------- Gamma, factorials


def gamma_fn(z):
    """Gamma function for real or complex arguments; raises at poles."""
    arr = np.asarray(z)
    if np.any((arr.real <= 0) & (arr.imag == 0) & (arr.real == np.round(arr.real))):
        raise PoleError("Gamma has a pole at non-positive integers")
    out = sps.gamma(arr)
    return out if np.ndim(out) else out[()]


@lru_cache(maxsize=None)
def double_factorial(n: int) -> int:
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def double_factorial_ratio(a: int, b: int) -> Fraction:
    return Fraction(double_factorial(a), double_factorial(b))
