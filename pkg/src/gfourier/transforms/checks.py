"""Numerical verification of eigenvalue equations, inversions and transform identities."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from ..exactpoly import QuasiPolynomial, RootSystem
from ..exactpoly.checks import CheckReport, psi_c
from ..exactpoly.operators import DeformedD, Dirac, DunklT, Euler, MultXVec
from ..harmonics import build_basis
from ..kernels import KernelParams, deformed_kernel, deformed_kernel_fourier, geometry
from ..multivector import ProductTable
from ..reports import NumericReport
from ..quadrature import QuadratureRule, cartesian_rule, radial_rule, rm_rule, sphere_rule, sqrt_radial_rm_rule, zonal_rule
from .apply import apply_transform, default_rule, default_targets
from .basis import (
    BasisIndex,
    angular_dimension,
    class_eigenvalue,
    eval_basis,
    family_basis,
    predicted_eigenvalue,
    symbolic_basis,
)

__all__ = [
    "EigenReport",
    "NumericReport",
    "measure_eigenvalue",
    "eigen_check",
    "eigen_product_check",
    "inversion_check",
    "calculus_check",
    "bochner_check",
    "bochner_radial_integral",
    "master_formula_check",
    "heisenberg_ratio",
    "unitarity_check",
    "semigroup_check",
    "factorization_check",
    "finite_order",
    "finite_order_check",
    "dunkl_integration_by_parts",
    "laguerre_gram",
    "dirac_fd",
]


@dataclass
class EigenReport:
    index: BasisIndex
    predicted: complex
    measured: complex
    rel_error: float
    residual: float
    n_nodes: int
    n_targets: int

    def passed(self, tol: float) -> bool:
        return self.rel_error < tol and self.residual < tol

    def to_dict(self) -> dict:
        return {
            "index": [self.index.j, self.index.k, self.index.member],
            "family": self.index.family,
            "predicted": [self.predicted.real, self.predicted.imag],
            "measured": [self.measured.real, self.measured.imag],
            "rel_error": self.rel_error,
            "residual": self.residual,
            "n_nodes": self.n_nodes,
            "n_targets": self.n_targets,
        }


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / (scale if scale > 0 else 1.0))


@lru_cache(maxsize=None)
def _table(m: int) -> ProductTable:
    return ProductTable(m)


# -------------------------------------------------------------- eigenvalues


def measure_eigenvalue(transformed: np.ndarray, psi: np.ndarray) -> tuple[complex, float]:
    """Least-squares ratio ``<psi, F psi> / <psi, psi>`` over all samples and the relative residual."""
    den = np.vdot(psi, psi).real
    if den == 0:
        raise ValueError("basis function vanishes at every target")
    lam = complex(np.vdot(psi, transformed) / den)
    res = float(np.linalg.norm(transformed - lam * psi) / math.sqrt(den))
    return lam, res


def eigen_check(
    params: KernelParams,
    indices: Sequence[BasisIndex],
    rule: QuadratureRule | None = None,
    targets=None,
    level: int = 0,
) -> list[EigenReport]:
    """Apply the transform to each basis function and compare with its predicted eigenvalue."""
    ys = default_targets(params.m) if targets is None else np.asarray(targets, dtype=float)
    out = []
    for idx in indices:
        rl = rule if rule is not None else default_rule(params, idx, level)
        fy = apply_transform(params, idx, rl, ys)
        psi = eval_basis(idx, params, ys)
        lam, res = measure_eigenvalue(fy, psi)
        pred = predicted_eigenvalue(params, idx)
        rel = abs(lam - pred) / abs(pred)
        out.append(EigenReport(idx, pred, lam, rel, res, len(rl), ys.shape[0]))
    return out


def default_indices(params: KernelParams, max_j: int, max_k: int, members: int = 1) -> list[BasisIndex]:
    fam = family_basis(params)
    out = []
    for j in range(max_j + 1):
        for k in range(max_k + 1):
            dim = angular_dimension(BasisIndex(fam, 0, k), params.m, params)
            for mem in range(min(members, dim)):
                out.append(BasisIndex(fam, j, k, mem))
    return out


def eigen_product_check(m: int, max_k: int = 10, max_p: int = 5) -> CheckReport:
    """Exact check that the eigenvalues of the ``j`` and ``m-2-j`` class transforms multiply to one."""
    rep = CheckReport(f"class eigenvalue products m={m}")
    for j in range(m - 1):
        for k in range(max_k + 1):
            for p in range(max_p + 1):
                prod = class_eigenvalue(m, j, p, k) * class_eigenvalue(m, m - 2 - j, p, k)
                rep.record(prod == 1, f"j={j} p={p} k={k}: product {prod}")
    return rep


# --------------------------------------------------------------- inversion


def _clifford_panel(m: int, degree: int) -> list[BasisIndex]:
    out = []
    for k in range(degree + 1):
        dim = angular_dimension(BasisIndex("clifford_hermite", 0, k), m)
        for p in range(0, degree - k + 1):
            # psi_p has total degree 2*floor(p/2) + (p odd) + k = p + k
            for mem in range(dim):
                out.append(BasisIndex("clifford_hermite", p, k, mem))
    return out


def _panel_columns(pts: np.ndarray, panel: Sequence[BasisIndex]) -> np.ndarray:
    return np.stack([eval_basis(idx, None, pts).reshape(-1) for idx in panel], axis=1)


def _fit_panel(values: np.ndarray, cols: np.ndarray):
    """Least-squares coefficients ``c`` with ``values ~ cols @ c`` and the relative residual."""
    coef, *_ = np.linalg.lstsq(cols, values.reshape(-1), rcond=None)
    fit_res = float(np.linalg.norm(cols @ coef - values.reshape(-1)) / max(np.linalg.norm(values), 1e-300))
    # terms far below working precision are dropped
    coef = np.where(np.abs(coef) > 1e-13 * np.abs(coef).max(initial=0.0), coef, 0)
    return coef, fit_res


def _panel_functions(coefs: np.ndarray, panel: Sequence[BasisIndex]) -> list[Callable[[np.ndarray], np.ndarray]]:
    """One callable per row of ``coefs``; all rows share a single pass over the panel."""
    cache: dict = {}

    def values(x):
        key = x.tobytes()
        if cache.get("key") != key:
            acc = np.zeros((coefs.shape[0], x.shape[0] * (1 << x.shape[1])), dtype=complex)
            live = [i for i in range(len(panel)) if np.any(coefs[:, i])]
            for start in range(0, len(live), 16):
                blk = live[start : start + 16]
                vals = np.stack([eval_basis(panel[i], None, x).reshape(-1) for i in blk])
                acc += coefs[:, blk] @ vals
            acc = acc.reshape(coefs.shape[0], x.shape[0], 1 << x.shape[1])
            cache.update(key=key, acc=acc)
        return cache["acc"]

    return [lambda x, row=row: values(x)[row] for row in range(coefs.shape[0])]


def _fit_points(m: int) -> np.ndarray:
    # enough directions to separate every angular degree in the panel
    return default_targets(m, radii=(0.3, 0.8, 1.4, 2.1), directions=30 if m > 2 else 12, seed=777)


def inversion_check(
    m: int,
    j: int,
    indices: Sequence[BasisIndex] | None = None,
    tol: float = 1e-5,
    rule: QuadratureRule | None = None,
) -> NumericReport:
    """``F^j_+ F^{m-2-j}_+ = id`` on basis functions, both transforms computed numerically.

    The inner transform is sampled on fit points and projected onto all
    Clifford-Hermite functions of the same total degree; the outer transform
    is then applied to that interpolant.
    """
    if m % 2 or not 0 <= j <= m - 2:
        raise ValueError("need even m and 0 <= j <= m - 2")
    inner = KernelParams("cft_class", m, j=m - 2 - j, mode="closed")
    outer = KernelParams("cft_class", m, j=j, mode="closed")
    if indices is None:
        indices = [BasisIndex("clifford_hermite", p, k) for p, k in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]]
    indices = list(indices)
    rep = NumericReport(f"inversion m={m} j={j}", tol)
    pts = _fit_points(m)
    ys = default_targets(m)
    if rule is None:
        rule = default_rule(inner, None, 0)
    stage1 = apply_transform(inner, indices, rule, pts)
    panel = _clifford_panel(m, max(idx.j + idx.k for idx in indices))
    cols = _panel_columns(pts, panel)
    coefs = np.zeros((len(indices), len(panel)), dtype=complex)
    residuals = []
    for n, idx in enumerate(indices):
        # projection onto all functions up to the same total degree
        use = np.array([q.j + q.k <= idx.j + idx.k for q in panel])
        c, res = _fit_panel(stage1[n], cols[:, use])
        coefs[n, use] = c
        residuals.append(res)
    stage2 = apply_transform(outer, _panel_functions(coefs, panel), rule, ys)
    for n, idx in enumerate(indices):
        err = _rel(stage2[n], eval_basis(idx, None, ys))
        rep.record(max(err, residuals[n]), f"{idx.label()} fit residual {residuals[n]:.2e}")
    return rep


# ---------------------------------------------------------------- calculus


def dirac_fd(values_at: Callable[[np.ndarray], np.ndarray], ys: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """Left Dirac operator ``sum_i e_i d_i`` by central differences."""
    m = ys.shape[1]
    tab = _table(m)
    out = np.zeros((ys.shape[0], 1 << m), dtype=complex)
    for i in range(m):
        step = np.zeros(m)
        step[i] = h
        d = (values_at(ys + step) - values_at(ys - step)) / (2 * h)
        e = np.zeros(1 << m)
        e[1 << i] = 1.0
        out += tab.mul(e, d, left_blades=[1 << i])
    return out


def euler_fd(values_at: Callable[[np.ndarray], np.ndarray], ys: np.ndarray, h: float = 1e-3) -> np.ndarray:
    m = ys.shape[1]
    out = 0
    for i in range(m):
        step = np.zeros(m)
        step[i] = h
        out = out + ys[:, i : i + 1] * (values_at(ys + step) - values_at(ys - step)) / (2 * h)
    return out


def _left_vec(ys: np.ndarray, vals: np.ndarray) -> np.ndarray:
    tab = _table(ys.shape[1])
    return tab.mul(tab.vector(ys), vals, left_blades=[1 << i for i in range(ys.shape[1])])


def _stencil(ys: np.ndarray, h: float) -> np.ndarray:
    m = ys.shape[1]
    pts = [ys]
    for i in range(m):
        step = np.zeros(m)
        step[i] = h
        pts += [ys + step, ys - step]
    return np.concatenate(pts)


def _lookup(ys: np.ndarray, h: float, values: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    """Map stencil point sets back to precomputed transform values."""
    n, m = ys.shape
    blocks = {}
    for b in range(2 * m + 1):
        blocks[b] = values[b * n : (b + 1) * n]

    def at(q):
        diff = q - ys
        if not np.any(diff):
            return blocks[0]
        i = int(np.argmax(np.abs(diff[0])))
        return blocks[1 + 2 * i + (0 if diff[0, i] > 0 else 1)]

    return at


def _compile(q: QuasiPolynomial) -> Callable[[np.ndarray], np.ndarray]:
    ev = q.compile()
    return lambda x: ev(x)


def calculus_check(
    family: str,
    m: int,
    indices: Sequence[BasisIndex] | None = None,
    c=1,
    alpha: float = math.pi / 3,
    beta: float = math.pi / 5,
    tol: float = 1e-5,
    h: float = 1e-3,
    level: int = 1,
) -> NumericReport:
    """Differentiation and multiplication rules, inputs built exactly, outputs differentiated numerically.

    ``family`` is one of ``cft``, ``cft_class``, ``cft_fractional`` or
    ``deformed_semigroup``.
    """
    ys = default_targets(m, radii=(0.5, 1.1, 1.8), directions=4 if m == 2 else 3)
    st = _stencil(ys, h)
    rep = NumericReport(f"calculus {family} m={m}", tol)
    xvec, dirac = MultXVec(), Dirac()
    if family == "deformed_semigroup":
        cc = Fraction(c)
        params = KernelParams("deformed_semigroup", m, c=float(cc), mode="fourier")
        roots = RootSystem.trivial(m)
        dd, eu = DeformedD(cc, roots), Euler()
        if indices is None:
            indices = [BasisIndex("deformed", t, l) for t, l in [(0, 0), (0, 1), (1, 0), (1, 1)]]
        delta = params.delta
        for idx in indices:
            psi = symbolic_basis(idx, m, params)
            rl = default_rule(params, idx, level)
            srcs = [_compile(psi), _compile(dd.apply(psi)), _compile(xvec.apply(psi)), _compile(eu.apply(psi))]
            f_psi, f_dpsi, f_xpsi, f_epsi = apply_transform(params, srcs, rl, st)
            n = ys.shape[0]
            look = _lookup(ys, h, f_psi)
            base = f_psi[:n]
            # D on the output: Dirac + c r^-2 y E
            r2 = np.sum(ys * ys, axis=1)[:, None]
            d_out = dirac_fd(look, ys, h) + float(cc) * _left_vec(ys, euler_fd(look, ys, h)) / r2
            rep.record(_rel(f_dpsi[:n], 1j * (1 + float(cc)) * _left_vec(ys, base)), f"F D {idx.label()}")
            rep.record(_rel(f_xpsi[:n], 1j / (1 + float(cc)) * d_out), f"F x {idx.label()}")
            rep.record(_rel(f_epsi[:n], -(euler_fd(look, ys, h) + delta * base)), f"F E {idx.label()}")
        return rep
    if m % 2:
        raise ValueError("the Clifford families are checked in even dimension")
    if indices is None:
        indices = [BasisIndex("clifford_hermite", p, k) for p, k in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    n = ys.shape[0]
    for idx in indices:
        psi = symbolic_basis(idx, m)
        src = [_compile(psi), _compile(xvec.apply(psi)), _compile(dirac.apply(psi))]
        if family in ("cft", "cft_class"):
            for sign in ("+", "-"):
                other = "-" if sign == "+" else "+"
                s = 1 if sign == "+" else -1
                if family == "cft":
                    p_this = KernelParams("cft", m, sign=sign, mode="closed")
                    p_other = KernelParams("cft", m, sign=other, mode="closed")
                    factor = -s * (-1) ** (m // 2)
                    rl = default_rule(p_this, idx, 0)
                    f_x, f_d = apply_transform(p_this, src[1:], rl, ys)
                    f_o = apply_transform(p_other, src[0], rl, st)
                    look = _lookup(ys, h, f_o)
                    rep.record(_rel(f_x, factor * dirac_fd(look, ys, h)), f"F{sign}(x f) {idx.label()}")
                    rep.record(_rel(f_d, factor * _left_vec(ys, f_o[:n])), f"F{sign}(D f) {idx.label()}")
                else:
                    factor = -s * (-s * 1j) ** m
                    for jj in range(m - 1):
                        plus = KernelParams("cft_class", m, j=jj, mode="closed")
                        rl = default_rule(plus, idx, 0)
                        # F^j_-(f)(y) = F^j_+(f)(-y) in even dimension
                        pts_this = ys if sign == "+" else -ys
                        pts_other = -st if sign == "+" else st
                        f_x, f_d = apply_transform(plus, src[1:], rl, pts_this)
                        f_o = apply_transform(plus, src[0], rl, pts_other)
                        look = _lookup(ys, h, f_o)
                        rep.record(_rel(f_x, factor * dirac_fd(look, ys, h)), f"F^{jj}{sign}(x f) {idx.label()}")
                        rep.record(_rel(f_d, factor * _left_vec(ys, f_o[:n])), f"F^{jj}{sign}(D f) {idx.label()}")
        elif family == "cft_fractional":
            ca, sa = math.cos(alpha), math.sin(alpha)
            p_minus = KernelParams("cft_fractional", m, alpha=alpha, beta=-beta, mode="closed")
            p_plus = KernelParams("cft_fractional", m, alpha=alpha, beta=beta, mode="closed")
            ph = cmath.exp(-1j * beta * (m - 1))
            xq, dq = xvec.apply(psi), dirac.apply(psi)
            rl = default_rule(p_minus, idx, 0)
            ev_x, ev_d = _compile(xq), _compile(dq)
            first = lambda x: ca * ev_x(x) - 1j * sa * ev_d(x)  # noqa: E731
            second = lambda x: ca * ev_d(x) - 1j * sa * ev_x(x)  # noqa: E731
            f1, f2 = apply_transform(p_minus, [first, second], rl, ys)
            f_o = apply_transform(p_plus, src[0], rl, st)
            look = _lookup(ys, h, f_o)
            rep.record(_rel(f1, ph * _left_vec(ys, f_o[:n])), f"first rule {idx.label()}")
            rep.record(_rel(f2, ph * dirac_fd(look, ys, h)), f"second rule {idx.label()}")
        else:
            raise ValueError(f"no calculus rules recorded for {family!r}")
    return rep


# ----------------------------------------------------------------- Bochner


def bochner_radial_integral(c: float, m: int, ell: int, f_radial: Callable, s: float, odd: bool) -> complex:
    """``int r^(ell+odd) f(r) z^{-(delta-2)/2} J_nu(z) h(r) r^{m-1} dr`` with ``z = r s`` by adaptive quadrature."""
    delta = 1 + (m - 1) / (1 + c)
    gam = (2 * ell + m + c) / (1 + c)
    nu = gam / 2 if odd else gam / 2 - 1
    hexp = 1 - (1 + m * c) / (1 + c)

    lead = nu - (delta - 2) / 2
    at_zero = 1.0 / (2.0**nu * math.gamma(nu + 1)) if abs(lead) < 1e-14 else 0.0

    def integrand(r):
        z = r * s
        zj = z ** (-(delta - 2) / 2) * special.jv(nu, z) if z > 0 else at_zero
        return r ** (ell + odd) * f_radial(r) * zj * r ** hexp * r ** (m - 1)

    val, _ = integrate.quad(integrand, 0, math.inf, epsabs=1e-14, epsrel=1e-12, limit=400)
    return val


def bochner_check(
    c: float,
    ell: int,
    m: int = 2,
    f_radial: Callable | None = None,
    rule: QuadratureRule | None = None,
    targets=None,
    tol: float = 1e-6,
    member: int = 0,
) -> NumericReport:
    """Full transform of ``f(r) M_ell`` and ``f(r) x M_ell`` against the one-dimensional radial formulas."""
    f_radial = f_radial or (lambda r: math.exp(-r * r / 2))
    params = KernelParams("deformed_semigroup", m, c=c, mode="fourier")
    mon = build_basis(m, ell, "monogenic").elements[member]
    mon_ev = mon.compile()
    xmon_ev = MultXVec().apply(mon).compile()
    fr = np.vectorize(f_radial, otypes=[float])

    def f1(x):
        return fr(np.linalg.norm(x, axis=1))[:, None] * mon_ev(x)

    def f2(x):
        return fr(np.linalg.norm(x, axis=1))[:, None] * xmon_ev(x)

    ys = default_targets(m, radii=(0.5, 1.2, 2.0), directions=4) if targets is None else np.asarray(targets, float)
    if rule is None:
        rule = sqrt_radial_rm_rule(m, 60.0, 120, 64 + 2 * ell if m == 2 else 24 + 2 * ell)
    g1, g2 = apply_transform(params, [f1, f2], rule, ys)
    phase = cmath.exp(-1j * math.pi * ell / (2 * (1 + c)))
    rep = NumericReport(f"Bochner c={c} ell={ell} m={m}", tol)
    s_all = np.linalg.norm(ys, axis=1)
    unit = ys / s_all[:, None]
    mon_u = mon_ev(unit)
    xmon_u = xmon_ev(unit)
    ref1 = np.zeros_like(g1)
    ref2 = np.zeros_like(g2)
    for i, s in enumerate(s_all):
        i1 = bochner_radial_integral(c, m, ell, f_radial, s, False)
        i2 = bochner_radial_integral(c, m, ell, f_radial, s, True)
        # the one-dimensional formulas already carry the normalisation of the transform
        ref1[i] = phase * mon_u[i] * i1
        ref2[i] = -1j * phase * xmon_u[i] * i2
    rep.record(_rel(g1, ref1), "f(r) M")
    rep.record(_rel(g2, ref2), "f(r) x M")
    return rep


# ---------------------------------------------------------- master formula


def master_formula_check(
    m: int,
    c: float,
    s_param: float,
    pairs: Sequence[tuple] | None = None,
    rule: QuadratureRule | None = None,
    tol: float = 1e-5,
) -> NumericReport:
    """Gaussian-weighted composition of the kernels at ``+-i pi/2`` against the semigroup kernel at ``omega = asinh(2 s)``."""
    if s_param <= 0:
        raise ValueError("s must be positive")
    omega = math.asinh(2 * s_param)
    delta = 1 + (m - 1) / (1 + c)
    sigma = 2 * math.pi ** (m / 2) / math.gamma(m / 2)
    hexp = 1 - (1 + m * c) / (1 + c)
    if pairs is None:
        rng = np.random.default_rng(31)
        pairs = [(np.zeros(m), np.zeros(m))] + [(rng.normal(size=m) * 0.8, rng.normal(size=m) * 0.8) for _ in range(3)]
    if rule is None:
        radius = 37.0 / s_param
        rule = sqrt_radial_rm_rule(m, math.sqrt(radius) ** 2, 200, 48 if m == 2 else 16)
    ynodes = rule.nodes
    r = np.linalg.norm(ynodes, axis=1)
    with np.errstate(divide="ignore"):
        hw = np.where(r > 0, r ** hexp, 0.0 if hexp > 0 else 1.0)
    w = rule.weights * np.exp(-s_param * r * r) * hw
    keep = np.abs(w) > 1e-22 * np.abs(w).max()
    ynodes, w = ynodes[keep], w[keep]
    tab = _table(m)
    rep = NumericReport(f"master formula m={m} c={c} s={s_param}", tol)
    for x, z in pairs:
        x = np.asarray(x, float)
        z = np.asarray(z, float)
        k1 = deformed_kernel_fourier(geometry(ynodes, x[None, :]), c)
        k2 = deformed_kernel(geometry(z[None, :], ynodes), c, -0.5j * math.pi)
        lhs = np.tensordot(w, tab.mul(k1, k2), axes=(0, 0))
        kz = deformed_kernel(geometry(z[None, :], x[None, :]), c, omega)[0]
        env = math.exp(-(x @ x + z @ z) / 2 * (1 - math.cosh(omega)) / math.sinh(omega))
        rhs = sigma * math.exp(-omega * delta / 2) * kz * env
        rep.record(_rel(lhs, rhs), f"x={x.tolist()} z={z.tolist()}")
    return rep


# --------------------------------------------------------------- Heisenberg


def heisenberg_ratio(
    f_radial: Callable,
    c: float,
    m: int,
    radius: float = 10.0,
    n_rho: int = 48,
    rule: QuadratureRule | None = None,
) -> float:
    """``||x f|| ||x F f|| / ||f||^2`` for a radial scalar ``f``.

    The transform of a radial function is radial, so it is computed along a
    single ray; all norms use the measure ``h(r) dx`` and a Gauss-Legendre
    rule in ``sqrt(r)`` on ``[0, radius]``.
    """
    params = KernelParams("deformed_semigroup", m, c=c, mode="fourier")
    hexp = params.measure_exponent()
    sigma = 2 * math.pi ** (m / 2) / math.gamma(m / 2)
    t, w = np.polynomial.legendre.leggauss(n_rho)
    top = math.sqrt(radius)
    rho = (t + 1) * top / 2
    nodes = rho * rho
    radial_weight = sigma * w * top / 2 * 2 * rho * nodes ** (m - 1 + hexp)
    fr = np.vectorize(f_radial, otypes=[complex])
    fv = fr(nodes)
    norm_f = math.sqrt(float(np.sum(np.abs(fv) ** 2 * radial_weight)))
    norm_xf = math.sqrt(float(np.sum(np.abs(fv) ** 2 * nodes**2 * radial_weight)))
    ray = np.zeros((nodes.size, m))
    ray[:, 0] = nodes
    if rule is None:
        # f is radial and the targets lie on the e_1 axis, so the integrand is zonal
        rule = zonal_rule(m, 40.0, 80, 80)
    g = apply_transform(params, lambda x: fr(np.linalg.norm(x, axis=1)), rule, ray)
    norm_xg = math.sqrt(float(np.sum(np.sum(np.abs(g) ** 2, axis=1) * nodes**2 * radial_weight)))
    return norm_xf * norm_xg / norm_f**2


# ---------------------------------------------------------------- unitarity


def _gram(vals: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # <f, g> = [int conj-bar(f) g h dx]_0 = sum_A conj(f_A) g_A
    return np.einsum("ina,jna,n->ij", vals.conj(), vals, weights)


def unitarity_check(
    params: KernelParams,
    indices: Sequence[BasisIndex],
    outer: QuadratureRule | None = None,
    tol: float = 1e-6,
    level: int = 1,
) -> NumericReport:
    """Gram matrix of ``{F psi}`` against that of ``{psi}``, both on an outer rule."""
    from .apply import measure_weight

    m = params.m
    if outer is None:
        # the inner rule resolves the kernel oscillation only for moderate |y|;
        # panel members of degree <= 4 keep under 1e-9 of their mass beyond 6
        outer = sqrt_radial_rm_rule(m, 6.0, 20, 10 if m == 2 else 8)
    w = outer.weights * measure_weight(params, outer.nodes)
    keep = w > 1e-22 * w.max()
    nodes, w = outer.nodes[keep], w[keep]
    psi = np.stack([eval_basis(idx, params, nodes) for idx in indices])
    # indices sharing a radial profile share one inner rule and one kernel pass
    groups: dict[int, list[int]] = {}
    for n, idx in enumerate(indices):
        groups.setdefault(idx.k, []).append(n)
    fpsi = np.empty_like(psi)
    for members in groups.values():
        inner = default_rule(params, max((indices[n] for n in members), key=lambda q: q.j), level)
        fpsi[members] = apply_transform(params, [indices[n] for n in members], inner, nodes)
    g0 = _gram(psi, w)
    g1 = _gram(fpsi, w)
    rep = NumericReport(f"unitarity {params.family} m={m}", tol)
    rep.record(float(np.max(np.abs(g1 - g0)) / np.max(np.abs(g0))), "Gram matrices")
    return rep


# --------------------------------------------------- composition identities


def _nested(first: KernelParams, second: KernelParams, idx: BasisIndex, ys: np.ndarray, inner, outer) -> np.ndarray:
    """``second(first(psi))`` with the intermediate function sampled on the outer rule nodes."""
    mid = apply_transform(first, idx, inner, outer.nodes)
    where = {row.tobytes(): i for i, row in enumerate(outer.nodes)}

    def g(x):
        try:
            return mid[[where[row.tobytes()] for row in x]]
        except KeyError:
            raise RuntimeError("intermediate function requested off the outer rule") from None

    return apply_transform(second, g, outer, ys)


def _outer_rule(m: int) -> QuadratureRule:
    # a bounded ball keeps the intermediate transform inside the region the
    # inner rule resolves; Gauss-Laguerre plain weights would amplify its
    # far-field error by exp(r^2 / 2)
    return sqrt_radial_rm_rule(m, 9.0, 48, 28 if m == 2 else 14)


def semigroup_check(m: int, alpha: float, beta: float, indices: Sequence[BasisIndex], tol: float = 1e-6) -> NumericReport:
    """``F_alpha F_beta = F_{alpha+beta}`` for the fractional transform, numerically and in predicted arithmetic."""
    pa = KernelParams("fractional", m, alpha=alpha)
    pb = KernelParams("fractional", m, alpha=beta)
    pab = KernelParams("fractional", m, alpha=alpha + beta)
    ys = default_targets(m)
    rep = NumericReport(f"semigroup alpha={alpha:g} beta={beta:g}", tol)
    outer = _outer_rule(m)
    for idx in indices:
        inner = default_rule(pb, idx, 2)
        nested = _nested(pb, pa, idx, ys, inner, outer)
        direct = apply_transform(pab, idx, inner, ys)
        rep.record(_rel(nested, direct), f"numeric {idx.label()}")
        pred = predicted_eigenvalue(pa, idx) * predicted_eigenvalue(pb, idx)
        rep.record(abs(pred - predicted_eigenvalue(pab, idx)), f"eigenvalue {idx.label()}")
    return rep


def factorization_check(kind: str, m: int, indices: Sequence[BasisIndex], alpha: float = math.pi / 3, beta: float = math.pi / 4, tol: float = 1e-6) -> NumericReport:
    """``F_- F_+ = parity`` (``kind='cft'``) or ``F_{a,b} F_{a,-b} = F_{2a}`` (``kind='cft_fractional'``)."""
    ys = default_targets(m)
    outer = _outer_rule(m)
    rep = NumericReport(f"factorization {kind} m={m}", tol)
    for idx in indices:
        if kind == "cft":
            first = KernelParams("cft", m, sign="+", mode="closed")
            second = KernelParams("cft", m, sign="-", mode="closed")
            nested = _nested(first, second, idx, ys, default_rule(first, idx, 2), outer)
            rep.record(_rel(nested, eval_basis(idx, None, -ys)), idx.label())
        elif kind == "cft_fractional":
            first = KernelParams("cft_fractional", m, alpha=alpha, beta=-beta, mode="closed")
            second = KernelParams("cft_fractional", m, alpha=alpha, beta=beta, mode="closed")
            inner = default_rule(first, idx, 2)
            nested = _nested(first, second, idx, ys, inner, outer)
            direct = apply_transform(KernelParams("fractional", m, alpha=2 * alpha), idx, inner, ys)
            rep.record(_rel(nested, direct), idx.label())
        else:
            raise ValueError(f"unknown factorization {kind!r}")
    return rep


# ------------------------------------------------------------- finite order


def finite_order(c, t_max: int = 8, ell_max: int = 8) -> int | None:
    """Least ``N`` with every predicted eigenvalue ``exp(-i (pi/2) (t + ell/(1+c)))`` an ``N``-th root of unity.

    ``c`` must be a ``Fraction`` (or int) for the exact answer; for other
    inputs ``None`` is returned unless a small order is found numerically.
    """
    if isinstance(c, (int, Fraction)):
        k = 1 + Fraction(c)
        n = 1
        for t in range(t_max + 1):
            for ell in range(ell_max + 1):
                turns = (t + ell / k) / 4  # eigenvalue = exp(-2 pi i * turns)
                n = math.lcm(n, turns.denominator)
        return n
    for n in range(1, 1001):
        ok = all(
            abs(((n * (t + ell / (1 + c)) / 4) + 0.5) % 1 - 0.5) < 1e-9 for t in range(t_max + 1) for ell in range(ell_max + 1)
        )
        if ok:
            return n
    return None


def finite_order_check(values=(Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(3)), irrational=(math.sqrt(2) - 1, math.pi - 1)) -> CheckReport:
    """Rational ``1+c`` gives eigenvalues that are roots of unity of one common order; irrational ``1+c`` does not."""
    rep = CheckReport("finite order")
    for c in values:
        n = finite_order(c)
        k = 1 + Fraction(c)
        ok = n is not None
        for t in range(4):
            for ell in range(4):
                ok = ok and (n * (t + ell / k) / 4).denominator == 1
        rep.record(ok, f"c={c}: order {n}")
    for c in irrational:
        rep.record(finite_order(c) is None, f"c={c} unexpectedly of finite order")
    return rep


# --------------------------------------------------------- Dunkl by parts


def dunkl_integration_by_parts(kappa=(Fraction(1, 2), Fraction(1)), degree: int = 3, n: int = 24, tol: float = 1e-8) -> NumericReport:
    """``int (T_i f) g w = - int f (T_i g) w`` on Z_2^2 for Gaussian polynomial pairs."""
    m = len(kappa)
    roots = RootSystem.z2m(m, list(kappa))
    rule = cartesian_rule([2 * float(k) for k in kappa], n, 1.0)
    wk = np.prod([np.abs(rule.nodes[:, i]) ** (2 * float(k)) for i, k in enumerate(kappa)], axis=0)
    rng = np.random.default_rng(5)
    rep = NumericReport(f"Dunkl integration by parts kappa={[str(k) for k in kappa]}", tol)

    def random_poly():
        q = QuasiPolynomial.zero(m, True)
        for _ in range(4):
            a = tuple(int(v) for v in rng.integers(0, degree + 1, size=m))
            if sum(a) > degree:
                continue
            q = q + QuasiPolynomial.monomial(m, a, gaussian=True) * Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        return q if not q.is_zero() else QuasiPolynomial.monomial(m, (1,) + (0,) * (m - 1), gaussian=True)

    for trial in range(4):
        f, g = random_poly(), random_poly()
        fv, gv = f.compile()(rule.nodes)[:, 0], g.compile()(rule.nodes)[:, 0]
        for i in range(m):
            t = DunklT(i + 1, roots)
            tf = t.apply(f).compile()(rule.nodes)[:, 0]
            tg = t.apply(g).compile()(rule.nodes)[:, 0]
            lhs = np.sum(rule.weights * wk * tf * gv)
            rhs = -np.sum(rule.weights * wk * fv * tg)
            scale = max(abs(lhs), np.sum(rule.weights * wk * np.abs(tf * gv)), 1e-300)
            rep.record(abs(lhs - rhs) / scale, f"trial {trial} axis {i + 1}")
    return rep


# ------------------------------------------------------- Laguerre constants


def laguerre_gram(c, m: int, t_max: int, ell: int, member: int = 0, n_rho: int = 80) -> np.ndarray:
    """Measured Gram matrix ``<psi^c_{t,ell}, psi^c_{t',ell}>`` (the normalising constants are reported, not asserted)."""
    params = KernelParams("deformed_semigroup", m, c=float(c))
    from .apply import measure_weight

    rule = sqrt_radial_rm_rule(m, 60.0, n_rho, 2 * ell + 8)
    w = rule.weights * measure_weight(params, rule.nodes)
    vals = np.stack([eval_basis(BasisIndex("deformed", t, ell, member), params, rule.nodes) for t in range(t_max + 1)])
    return _gram(vals, w)
