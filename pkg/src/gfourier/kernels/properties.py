"""Numerical property checks on the kernels: recursions, PDE systems, growth bounds, symmetry."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Callable

import numpy as np

from ..multivector import Multivector, ProductTable, blade_exp, bivector_blades
from ..reports import NumericReport
from . import evaluate
from .clifford import cft_series_parts
from .params import KernelParams

__all__ = [
    "recursion_check",
    "cf_system_check",
    "simple_system_check",
    "bound_scan",
    "plus_minus_check",
    "spin_equivariance_check",
    "random_rotor",
]

SQRT_HALF_PI = math.sqrt(math.pi / 2)


@lru_cache(maxsize=None)
def _table(m: int) -> ProductTable:
    return ProductTable(m)


def _d4(fn: Callable[[np.ndarray], np.ndarray], pts: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Fourth-order central difference of ``fn`` along coordinate ``axis``."""
    step = np.zeros(pts.shape[1])
    step[axis] = h
    return (fn(pts - 2 * step) - 8 * fn(pts - step) + 8 * fn(pts + step) - fn(pts + 2 * step)) / (12 * h)


def _basis_vector(m: int, i: int) -> np.ndarray:
    e = np.zeros(1 << m)
    e[1 << i] = 1.0
    return e


def _left_dirac(fn, pts, h):
    m = pts.shape[1]
    tab = _table(m)
    return sum(tab.mul(_basis_vector(m, i), _d4(fn, pts, i, h)) for i in range(m))


def _right_dirac(fn, pts, h):
    m = pts.shape[1]
    tab = _table(m)
    return sum(tab.mul(_d4(fn, pts, i, h), _basis_vector(m, i)) for i in range(m))


def _scaled_error(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(rhs)))))


def _sample(m: int, n: int, seed: int, radius: float = 2.0) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    return rng.uniform(-radius, radius, (n, m)) / math.sqrt(m), rng.uniform(-radius, radius, (n, m)) / math.sqrt(m)


# ------------------------------------------------------------ recursion


def recursion_check(lam: int = 2, n: int = 40, seed: int = 0, h: float = 1e-3, tol: float = 1e-6) -> NumericReport:
    """Dimension-lowering recursions of the series parts ``A``, ``B``, ``C`` (needs ``lam >= 2``).

    ``A_lam = -(lam/(lam-1)) z^-1 d_w A_{lam-1}``, ``B_lam = -z^-1 d_w B_{lam-1}`` and
    ``C_lam = -(lam z)^-1 d_w A_lam``, with ``d_w`` by finite differences.
    """
    if lam < 2:
        raise ValueError("the recursion from lam - 1 needs lam >= 2")
    rng = np.random.default_rng(seed)
    w = rng.uniform(-0.9, 0.9, n)
    z = rng.uniform(0.3, 6.0, n)
    rep = NumericReport(f"recursion lam={lam - 1}->{lam}", tol)

    def parts(lv, ww):
        return cft_series_parts(lv, ww, z)

    def dw(lv, which):
        f = [parts(lv, w + k * h)[which] for k in (-2, -1, 1, 2)]
        return (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)

    a_hi, b_hi, cz_hi = parts(lam, w)
    rep.record(_scaled_error(-(lam / (lam - 1)) * dw(lam - 1, 0) / z, a_hi), "A")
    rep.record(_scaled_error(-dw(lam - 1, 1) / z, b_hi), "B")
    rep.record(_scaled_error(-dw(lam, 0) / (lam * z), cz_hi / z), "C")
    return rep


# ------------------------------------------------------------ PDE systems


def cf_system_check(m: int, n: int = 50, seed: int = 1, h: float = 1e-3, tol: float = 1e-6) -> NumericReport:
    """Both Clifford-Fourier systems for both sign choices, closed-form kernels, even ``m``."""
    if m % 2:
        raise ValueError("closed-form kernels need even m")
    x, y = _sample(m, n, seed)
    tab = _table(m)
    kern = {s: KernelParams("cft", m, sign=s, mode="closed") for s in "+-"}

    def k_of_y(s):
        return lambda pts: evaluate(kern[s], x, pts)

    def k_of_x(s):
        return lambda pts: evaluate(kern[s], pts, y)

    xv, yv = tab.vector(x), tab.vector(y)
    rep = NumericReport(f"Clifford-Fourier system m={m}", tol)
    for upper in (True, False):
        # upper signs: d_y[K_-] = -(i)^m K_+ x ;  [K_+] d_x = (-i)^m y K_-
        s_out, s_in = ("-", "+") if upper else ("+", "-")
        eps = -1 if upper else 1
        lhs = _left_dirac(k_of_y(s_out), y, h)
        rhs = eps * (-eps * 1j) ** m * tab.mul(evaluate(kern[s_in], x, y), xv)
        rep.record(_scaled_error(lhs, rhs), f"d_y K_{s_out}")
        lhs = _right_dirac(k_of_x(s_in), x, h)
        rhs = -eps * (eps * 1j) ** m * tab.mul(yv, evaluate(kern[s_out], x, y))
        rep.record(_scaled_error(lhs, rhs), f"K_{s_in} d_x")
    return rep


def simple_system_check(
    m: int, alpha: float = math.pi / 3, beta: float = math.pi / 5, n: int = 50, seed: int = 2, h: float = 1e-3, tol: float = 1e-6
) -> NumericReport:
    """First-order system of the fractional kernel with its Gaussian chirp removed."""
    x, y = _sample(m, n, seed)
    tab = _table(m)
    mode = "closed" if m % 2 == 0 else "series"
    cot = math.cos(alpha) / math.sin(alpha)

    def hat(b):
        p = KernelParams("cft_fractional", m, alpha=alpha, beta=b, mode=mode)

        def fn(xs, ys):
            chirp = np.exp(-0.5j * cot * (np.sum(xs * xs, axis=1) + np.sum(ys * ys, axis=1)))
            return evaluate(p, xs, ys) * chirp[:, None]

        return fn

    plus, minus = hat(beta), hat(-beta)
    phase = cmath.exp(1j * beta * (m - 1))
    isa = 1j * math.sin(alpha)
    rep = NumericReport(f"fractional system m={m} alpha={alpha:.4g} beta={beta:.4g}", tol)
    lhs = isa * _left_dirac(lambda pts: plus(x, pts), y, h)
    rhs = phase * tab.mul(minus(x, y), tab.vector(x))
    rep.record(_scaled_error(lhs, rhs), "d_y equation")
    lhs = tab.mul(tab.vector(y), plus(x, y))
    rhs = phase * isa * _right_dirac(lambda pts: minus(pts, y), x, h)
    rep.record(_scaled_error(lhs, rhs), "d_x equation")
    return rep


# ------------------------------------------------------------ bounds


def bound_scan(
    m: int,
    j: int | None = None,
    decades: tuple = (0.01, 0.1, 1.0, 10.0),
    n: int = 4000,
    seed: int = 3,
    growth: float = 4.0,
) -> NumericReport:
    """Polynomial growth bound of the even-dimensional kernels on shells ``R/10 <= |x|,|y| <= R``.

    The scalar part and every bivector coefficient are divided by
    ``((1+|x|)(1+|y|))^e`` with ``e = (m-2)/2`` (``j = None``, Clifford-Fourier kernel)
    or ``e = j`` (kernel ``K^j_+``).  The recorded error is the ratio of the
    outermost shell maximum to the largest inner one; it stays below
    ``growth`` when the bound holds and would grow by ~10x per missing power.
    """
    if m % 2:
        raise ValueError("the bounds concern even m")
    rng = np.random.default_rng(seed)
    if j is None:
        params, expo, label = KernelParams("cft", m, mode="closed"), (m - 2) / 2, "Clifford-Fourier"
    else:
        params, expo, label = KernelParams("cft_class", m, j=j, mode="closed"), j, f"K^{j}"
    rep = NumericReport(f"growth bound {label} m={m}", growth)
    maxima = []
    for lo, hi in zip(decades[:-1], decades[1:]):
        def pts():
            d = rng.normal(size=(n, m))
            d /= np.linalg.norm(d, axis=1, keepdims=True)
            return d * np.exp(rng.uniform(math.log(lo), math.log(hi), n))[:, None]

        x, y = pts(), pts()
        val = evaluate(params, x, y) / SQRT_HALF_PI
        weight = ((1 + np.linalg.norm(x, axis=1)) * (1 + np.linalg.norm(y, axis=1))) ** expo
        scal = np.abs(val[:, 0]) / weight
        biv = np.max(np.abs(val[:, bivector_blades(m)]), axis=1) / weight
        top = float(max(scal.max(), biv.max()))
        maxima.append(top)
        rep.details.append((f"shell [{lo:g}, {hi:g}]", top))
    inner = max(maxima[:-1])
    ratio = maxima[-1] / inner if inner > 0 else math.inf
    if not all(np.isfinite(maxima)):
        ratio = math.inf
    rep.record(ratio, "outer / inner shell maximum")
    return rep


# ------------------------------------------------------------ symmetries


def plus_minus_check(m: int, n: int = 60, seed: int = 4, tol: float = 1e-8) -> NumericReport:
    """Series ``K_+(x, y)`` against ``conj(K_-(x, -y))``, the latter in closed form when ``m`` is even."""
    x, y = _sample(m, n, seed, 3.0)
    plus = evaluate(KernelParams("cft", m, sign="+"), x, y)
    mode = "closed" if m % 2 == 0 else "series"
    minus = np.conj(evaluate(KernelParams("cft", m, sign="-", mode=mode), x, -y))
    rep = NumericReport(f"K+ / K- relation m={m}", tol)
    rep.record(float(np.max(np.abs(plus - minus))), "componentwise")
    return rep


def random_rotor(m: int, rng: np.random.Generator, factors: int = 3) -> Multivector:
    """Product of exponentials of random simple bivectors."""
    rotor = Multivector.scalar(m, 1.0)
    for _ in range(factors):
        u, v = rng.normal(size=m), rng.normal(size=m)
        biv = Multivector.vector(u) * Multivector.vector(v)
        biv = biv.grade(2)
        rotor = rotor * blade_exp(biv * (rng.uniform(-1.5, 1.5) / max(biv.norm(), 1e-12)))
    return rotor


def spin_equivariance_check(
    m: int, c: float = 1.0, omega: complex = 0.5j * math.pi, n: int = 20, rotors: int = 3, seed: int = 5, tol: float = 1e-9
) -> NumericReport:
    """``K(s' x s, s' y s) = s' K(x, y) s`` for the deformed kernel, ``s'`` the Clifford bar of a rotor."""
    rng = np.random.default_rng(seed)
    params = KernelParams("deformed_semigroup", m, c=c, omega=omega)
    x, y = _sample(m, n, seed, 2.5)
    tab = _table(m)
    base = evaluate(params, x, y)
    rep = NumericReport(f"spin equivariance m={m} c={c:g}", tol)
    for r in range(rotors):
        s = random_rotor(m, rng).to_array(float)
        sb = tab.bar(s)

        def act(v):
            return tab.mul(tab.mul(sb, v), s)

        xr = act(tab.vector(x))[:, [1 << i for i in range(m)]].real
        yr = act(tab.vector(y))[:, [1 << i for i in range(m)]].real
        lhs = evaluate(params, xr, yr)
        rhs = act(base)
        rep.record(_scaled_error(lhs, rhs), f"rotor {r}")
    return rep
