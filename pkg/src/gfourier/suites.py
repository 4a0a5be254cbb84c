"""Named verification suites shared by the command line and the acceptance tests.

Each check returns a report exposing ``passed`` and ``to_dict``; exact checks
use :class:`CheckReport` and numerical ones :class:`NumericReport`.  A suite
is a list of ``(name, thunk)`` pairs so that callers can time and filter
individual checks.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np
from scipy import special as sps

from .exactpoly import QuasiPolynomial, RootSystem
from .exactpoly.checks import (
    CheckReport,
    dsquare_expand,
    dunkl_sl2_relations,
    identity_check,
    ladder_check,
    osp_rad_relations,
    osp_relations,
)
from .exactpoly.operators import (
    DeformedD,
    Dirac,
    DunklT,
    Gamma,
    MultRPow,
    MultXVec,
    commutator,
)
from .harmonics import build_basis, pin_action, repr_kernel, sphere_area
from .kernels import KernelParams, evaluate
from .kernels import properties as kprops
from .multivector import Multivector
from .quadrature import radial_rule, sphere_rule
from .reports import NumericReport
from .specfun import bessel_j, gegenbauer, laguerre

Check = Callable[[], object]

__all__ = [
    "bessel_recurrence_check",
    "gegenbauer_derivative_check",
    "laguerre_orthogonality_check",
    "laguerre_hankel_check",
    "bessel_gaussian_integral_check",
    "monogenic_check",
    "gamma_eigen_check",
    "funk_hecke_check",
    "reproducing_kernel_check",
    "pin_equivariance_check",
    "osp_suite",
    "dunkl_sl2_suite",
    "osp_rad_suite",
    "dsquare_suite",
    "ladder_suite",
    "dunkl_commute_check",
    "gamma_radial_check",
    "kernel_panel",
    "cross_validation_check",
    "CROSS_VALIDATION_CASES",
    "eigen_suite_check",
    "EIGEN_CASES",
    "SUITES",
    "suite_checks",
    "run_checks",
    "report_summary",
]


# ================================================================ specfun


def bessel_recurrence_check(tol: float = 1e-11) -> NumericReport:
    """``J_{nu-1} + J_{nu+1} = (2 nu / z) J_nu`` on ``nu = 0, 0.5, ..., 20``."""
    rep = NumericReport("Bessel three-term recurrence", tol)
    z = np.array([0.1, 1.0, 5.0, 20.0, 80.0])
    for nu in np.arange(0.0, 20.25, 0.5):
        lo, mid, hi = bessel_j(nu - 1, z), bessel_j(nu, z), bessel_j(nu + 1, z)
        rhs = 2 * nu / z * mid
        scale = np.maximum.reduce([np.abs(lo), np.abs(hi), np.abs(rhs), np.full_like(z, 1e-300)])
        rep.record(float(np.max(np.abs(lo + hi - rhs) / scale)), f"nu={nu:g}")
    return rep


def gegenbauer_derivative_check(tol: float = 1e-8, h: float = 1e-4) -> NumericReport:
    """``d/dw C_k^lam = 2 lam C_{k-1}^{lam+1}`` by fourth-order differences."""
    rep = NumericReport("Gegenbauer derivative identity", tol)
    w = np.linspace(-0.9, 0.9, 13)
    for lam in (0.5, 1.0, 1.5, 2.5):
        for k in range(1, 9):
            f = [gegenbauer(k, lam, w + s * h) for s in (-2, -1, 1, 2)]
            fd = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
            exact = 2 * lam * gegenbauer(k - 1, lam + 1, w)
            rep.record(float(np.max(np.abs(fd - exact)) / max(1.0, float(np.max(np.abs(exact))))), f"lam={lam} k={k}")
    return rep


def laguerre_orthogonality_check(tol: float = 1e-9) -> NumericReport:
    """``int L_i^a L_j^a t^a e^-t dt = delta_ij Gamma(a+j+1)/j!`` by Gauss-Laguerre, ``i, j <= 8``."""
    rep = NumericReport("Laguerre orthogonality", tol)
    for alpha in (0.0, 0.5, 2.5):
        rule = radial_rule(12, alpha, 1.0, 1.0)
        vals = np.array([laguerre(j, alpha, rule.nodes) for j in range(9)])
        gram = (vals * rule.weights) @ vals.T
        norms = np.array([math.gamma(alpha + j + 1) / math.factorial(j) for j in range(9)])
        rep.record(float(np.max(np.abs(gram - np.diag(norms)) / np.sqrt(np.outer(norms, norms)))), f"alpha={alpha}")
    return rep


def laguerre_hankel_check(tol: float = 1e-8) -> NumericReport:
    """``int r^(a+1) J_a(rs) L_j^a(r^2) e^(-r^2/2) dr = (-1)^j s^a L_j^a(s^2) e^(-s^2/2)``."""
    rep = NumericReport("Laguerre-Hankel integral", tol)
    for alpha in (0.0, 1.0, 2.5):
        # J_a(rs) r^a is r^(2a) times an entire function of r^2
        rule = radial_rule(80, 2 * alpha + 1, 2.0, 0.5)
        r = rule.nodes
        for j in range(5):
            for s in (0.3, 1.0, 2.0):
                f = bessel_j(alpha, r * s) * r ** (-alpha) * laguerre(j, alpha, r * r)
                num = float(rule.integrate(f))
                exact = (-1) ** j * s**alpha * float(laguerre(j, alpha, s * s)) * math.exp(-s * s / 2)
                rep.record(abs(num - exact) / max(1.0, abs(exact)), f"alpha={alpha} j={j} s={s}")
    return rep


def bessel_gaussian_integral_check(tol: float = 1e-8) -> NumericReport:
    """``int J_nu(at) J_nu(bt) e^(-g^2 t^2) t dt = e^(-(a^2+b^2)/(4g^2)) I_nu(ab/(2g^2)) / (2g^2)``.

    ``I_nu`` comes from scipy as an independent reference.
    """
    rep = NumericReport("Bessel-Gaussian product integral", tol)
    for nu in (0.0, 1.5):
        for g in (0.7, 1.0, 1.6):
            rule = radial_rule(80, 2 * nu + 1, 2.0, g * g)
            t = rule.nodes
            for a in (0.5, 1.3, 2.0):
                for b in (0.4, 1.0, 2.5):
                    f = bessel_j(nu, a * t) * bessel_j(nu, b * t) * t ** (-2 * nu)
                    num = float(rule.integrate(f))
                    q = a * b / (2 * g * g)
                    exact = math.exp(-(a * a + b * b) / (4 * g * g)) * float(sps.iv(nu, q)) / (2 * g * g)
                    rep.record(abs(num - exact) / max(abs(exact), 1e-300), f"nu={nu} g={g} a={a} b={b}")
    return rep


# ============================================================== harmonics


def monogenic_check(dims: Iterable[int] = (2, 3, 4), max_k: int = 2) -> CheckReport:
    rep = CheckReport("monogenic bases are Dirac-null")
    d = Dirac()
    for m in dims:
        for k in range(max_k + 1):
            for i, el in enumerate(build_basis(m, k, "monogenic").elements):
                rep.record(d.apply(el).is_zero(), f"m={m} k={k} member {i}")
    return rep


def gamma_eigen_check(dims: Iterable[int] = (2, 3, 4), max_k: int = 2) -> CheckReport:
    """``Gamma M_k = -k M_k`` and ``Gamma x M_{k-1} = (k + m - 2) x M_{k-1}``."""
    rep = CheckReport("Gamma eigenvalues")
    gam, xv = Gamma(), MultXVec()
    for m in dims:
        for k in range(max_k + 1):
            for i, el in enumerate(build_basis(m, k, "monogenic").elements):
                rep.record(gam.apply(el) == el * (-k), f"M_{k} m={m} member {i}")
                xm = xv.apply(el)
                rep.record(gam.apply(xm) == xm * (k + 1 + m - 2), f"x M_{k} m={m} member {i}")
    return rep


def _harmonic_values(el: QuasiPolynomial, pts: np.ndarray) -> np.ndarray:
    return el.compile()(pts)


def funk_hecke_check(m: int = 3, max_k: int = 4, tol: float = 1e-9) -> NumericReport:
    """``((lam+k)/lam) int C_k^lam(<xi,eta>) H_l(xi) dsigma(xi) = sigma_m delta_kl H_l(eta)``."""
    lam = (m - 2) / 2
    rule = sphere_rule(m, 2 * max_k + 4)
    rng = np.random.default_rng(7)
    etas = rng.normal(size=(4, m))
    etas /= np.linalg.norm(etas, axis=1, keepdims=True)
    sigma = sphere_area(m)
    rep = NumericReport(f"Funk-Hecke m={m}", tol)
    for ell in range(max_k + 1):
        basis = build_basis(m, ell, "harmonic").elements
        scalar = [el for el in basis if el.blades() == {0}]
        for el in scalar[:3]:
            h_nodes = _harmonic_values(el, rule.nodes)[:, 0].real
            h_eta = _harmonic_values(el, etas)[:, 0].real
            for k in range(max_k + 1):
                kern = gegenbauer(k, lam, rule.nodes @ etas.T, "limit_scaled")
                got = (kern * (rule.weights * h_nodes)[:, None]).sum(axis=0)
                want = sigma * h_eta if k == ell else np.zeros_like(h_eta)
                rep.record(float(np.max(np.abs(got - want))) / max(1.0, float(np.max(np.abs(h_eta)))), f"k={k} l={ell}")
    return rep


def reproducing_kernel_check(dims: Iterable[int] = (2, 3), max_k: int = 3, tol: float = 1e-9) -> NumericReport:
    """The four reproduction/orthogonality integrals of ``P_k`` and ``Q_{k-1}`` on monogenics."""
    rep = NumericReport("monogenic reproducing kernels", tol)
    for m in dims:
        rule = sphere_rule(m, 2 * max_k + 6)
        sigma = sphere_area(m)
        eta = np.linspace(0.3, 1.0, m)
        eta /= np.linalg.norm(eta)
        eta_vec = Multivector.vector(list(eta))
        for ell in range(max_k + 1):
            els = build_basis(m, ell, "monogenic").elements[:4]
            for el in els:
                fn = el.compile()
                vals = fn(rule.nodes)
                at_eta = Multivector.from_array(fn(eta[None, :])[0], m)
                for k in range(max_k + 2):
                    acc_pm = Multivector(m, {})
                    acc_px = Multivector(m, {})
                    acc_qm = Multivector(m, {})
                    acc_qx = Multivector(m, {})
                    for node, wt, v in zip(rule.nodes, rule.weights, vals):
                        p, q = repr_kernel(k, node, eta)
                        mv = Multivector.from_array(v, m)
                        xm = Multivector.vector(list(node)) * mv
                        acc_pm = acc_pm + (p * mv) * wt
                        acc_px = acc_px + (p * xm) * wt
                        if k >= 1:
                            acc_qm = acc_qm + (q * mv) * wt
                            acc_qx = acc_qx + (q * xm) * wt
                    zero = Multivector(m, {})
                    want_p = at_eta * sigma if k == ell else zero
                    want_q = (eta_vec * at_eta) * sigma if (k >= 1 and k == ell + 1) else zero
                    scale = max(1.0, at_eta.norm())
                    label = f"m={m} k={k} l={ell}"
                    rep.record((acc_pm - want_p).norm() / scale, f"P M {label}")
                    rep.record(acc_px.norm() / scale, f"P xM {label}")
                    if k >= 1:
                        rep.record(acc_qm.norm() / scale, f"Q M {label}")
                        rep.record((acc_qx - want_q).norm() / scale, f"Q xM {label}")
    return rep


def pin_equivariance_check(degree: int = 2) -> CheckReport:
    """``rho(s) x = -x rho(s)`` and ``rho(s) D = -D rho(s)`` for single reflections, exactly."""
    rep = CheckReport("Pin equivariance sign rule")
    xv = MultXVec()
    systems = [
        RootSystem.z2m(2, [Fraction(1, 2), Fraction(1, 3)]),
        RootSystem.a_type(3, Fraction(2, 5)),
    ]
    for roots in systems:
        m = roots.dim
        d = DeformedD(Fraction(1, 2), roots)
        inputs = [
            QuasiPolynomial.monomial(m, a, blade=b)
            for a in _exponents(m, degree)
            for b in (0, 1, (1 << m) - 1)
        ]
        for idx in range(len(roots.roots)):
            for f in inputs:
                rho = lambda g: pin_action(g, roots, idx)  # noqa: E731
                rep.record(rho(xv.apply(f)) == -xv.apply(rho(f)), f"x, root {idx}, {f!r}")
                rep.record(rho(d.apply(f)) == -d.apply(rho(f)), f"D, root {idx}, {f!r}")
    return rep


def _exponents(m: int, degree: int):
    from .exactpoly.checks import _multi_indices

    return list(_multi_indices(m, degree))


# ================================================================ algebra


def osp_suite(dims: Iterable[int] = (2, 3, 4), degree: int = 5) -> list[CheckReport]:
    out = []
    for m in dims:
        for name, lhs, rhs in osp_relations(m):
            out.append(identity_check(lhs, rhs, m, degree, name=f"osp m={m}: {name}"))
    return out


def _label(roots: RootSystem) -> str:
    return f"{roots.family}(m={roots.dim}, kappa={'/'.join(str(k) for k in sorted(set(roots.kappa)))})"


def _dunkl_systems(seed: int = 3) -> list[RootSystem]:
    rng = np.random.default_rng(seed)

    def rand_q():
        return Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))

    return [
        RootSystem.z2m(2, [rand_q(), rand_q()]),
        RootSystem.z2m(3, [rand_q(), rand_q(), rand_q()]),
        RootSystem.dihedral(3, rand_q()),
    ]


def dunkl_sl2_suite(degree: int = 4) -> list[CheckReport]:
    out = []
    for roots in _dunkl_systems():
        for name, lhs, rhs in dunkl_sl2_relations(roots):
            out.append(identity_check(lhs, rhs, roots.dim, degree, name=f"Dunkl sl2 {_label(roots)}: {name}"))
    return out


RADIAL_EXPONENTS = (0, Fraction(1, 2), Fraction(-1, 2), 1, -1)


def osp_rad_suite(cs=(Fraction(1, 2), 1, 3), dims=(2, 3), degree: int = 3) -> list[CheckReport]:
    out = []
    for c in cs:
        for m in dims:
            roots = RootSystem.trivial(m)
            for name, lhs, rhs in osp_rad_relations(c, roots):
                out.append(
                    identity_check(lhs, rhs, m, degree, RADIAL_EXPONENTS, name=f"deformed osp c={c} m={m}: {name}")
                )
    return out


def dsquare_suite(cs=(Fraction(1, 2), 1), dims=(2, 3), degree: int = 3) -> list[CheckReport]:
    out = []
    for c in cs:
        for m in dims:
            for roots in (RootSystem.trivial(m), RootSystem.z2m(m, 1)):
                dd = DeformedD(c, roots)
                out.append(
                    identity_check(dd @ dd, dsquare_expand(c, roots), m, degree, name=f"D^2 c={c} m={m} {_label(roots)}")
                )
    return out


def ladder_suite(cs=(0, 1), t_max: int = 3, ell_max: int = 2, m: int = 2) -> list[CheckReport]:
    out = []
    roots = RootSystem.trivial(m)
    for c in cs:
        for ell in range(ell_max + 1):
            basis = build_basis(m, ell, "monogenic").elements
            for mem in (0, len(basis) - 1):
                for t in range(t_max + 1):
                    rep = ladder_check(c, t, ell, basis[mem], roots)
                    rep.name = f"{rep.name} member={mem}"
                    out.append(rep)
    return out


def dunkl_commute_check(degree: int = 4) -> CheckReport:
    rep = CheckReport("Dunkl operators commute")
    for roots in _dunkl_systems(11):
        m = roots.dim
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                sub = identity_check(
                    DunklT(i, roots) @ DunklT(j, roots), DunklT(j, roots) @ DunklT(i, roots), m, degree, blades=[0]
                )
                rep.record(sub.passed, f"{_label(roots)} T{i}T{j}: {sub.counterexample}")
    return rep


def gamma_radial_check(dims=(2, 3), degree: int = 3) -> CheckReport:
    rep = CheckReport("Gamma commutes with radial powers")
    for m in dims:
        for q in (2, Fraction(1, 2), -1):
            sub = identity_check(commutator(Gamma(), MultRPow(q)), 0 * Gamma(), m, degree, (0, Fraction(1, 2)))
            rep.record(sub.passed, f"m={m} q={q}: {sub.counterexample}")
    return rep


# ================================================================ kernels


def kernel_panel(m: int, n: int = 20, radius: float = 3.0, seed: int = 11) -> tuple[np.ndarray, np.ndarray]:
    """All ``n x n`` pairs of ``n`` random ``x`` and ``n`` random ``y`` with norms up to ``radius``; ``x_0 = 0``."""
    rng = np.random.default_rng(seed)

    def pts():
        d = rng.normal(size=(n, m))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        return d * rng.uniform(0, radius, n)[:, None]

    x, y = pts(), pts()
    x[0] = 0.0
    return np.repeat(x, n, axis=0), np.tile(y, (n, 1))


CROSS_VALIDATION_CASES = (
    ("classical", 3, {}),
    ("radial", 3, {"a": 2.0}),
    ("radial", 3, {"a": 1.0}),
    ("cft", 2, {}),
    ("cft", 4, {}),
    ("cft_fractional", 2, {"alpha": math.pi / 3, "beta": math.pi / 3}),
    ("cft_class", 4, {"j": 0}),
    ("cft_class", 4, {"j": 1}),
    ("cft_class", 4, {"j": 2}),
)


def cross_validation_check(family: str, m: int, extra: dict, tol: float = 1e-8) -> NumericReport:
    """Series against closed form, maximum componentwise error on a 20 x 20 panel."""
    x, y = kernel_panel(m)
    series = evaluate(KernelParams(family, m, mode="series", **extra), x, y)
    closed = evaluate(KernelParams(family, m, mode="closed", **extra), x, y)
    label = " ".join(f"{k}={v:.4g}" for k, v in extra.items())
    rep = NumericReport(f"series vs closed {family} m={m} {label}".rstrip(), tol)
    rep.record(float(np.max(np.abs(series - closed))), "componentwise")
    return rep


# ============================================================ transforms


EIGEN_CASES = {
    # name: (params, (max_j, max_k), tolerance)
    "fractional m=2": (KernelParams("fractional", 2, alpha=math.pi / 3), (3, 3), 1e-6),
    "radial a=1 m=2": (KernelParams("radial", 2, a=1.0), (2, 2), 1e-6),
    "radial a=2 m=2": (KernelParams("radial", 2, a=2.0), (2, 2), 1e-6),
    "cft m=2": (KernelParams("cft", 2, mode="closed"), (2, 2), 1e-6),
    "cft_fractional m=2": (KernelParams("cft_fractional", 2, alpha=math.pi / 3, beta=math.pi / 4, mode="closed"), (2, 2), 1e-6),
    "cft_class m=4 j=0": (KernelParams("cft_class", 4, j=0, mode="closed"), (2, 2), 1e-5),
    "cft_class m=4 j=1": (KernelParams("cft_class", 4, j=1, mode="closed"), (2, 2), 1e-5),
    "cft_class m=4 j=2": (KernelParams("cft_class", 4, j=2, mode="closed"), (2, 2), 1e-5),
    "deformed c=1/2 m=2": (KernelParams("deformed_semigroup", 2, c=0.5, mode="fourier"), (2, 2), 1e-6),
    "deformed c=1 m=2": (KernelParams("deformed_semigroup", 2, c=1.0, mode="fourier"), (2, 2), 1e-6),
}


def eigen_suite_check(name: str, quick: bool = False, level: int = 0) -> NumericReport:
    """Measured against predicted eigenvalues; the error is ``max(rel_error, residual)``."""
    from .transforms import default_indices, eigen_check

    params, (max_j, max_k), tol = EIGEN_CASES[name]
    if quick:
        max_j, max_k = min(max_j, 1), min(max_k, 1)
    indices = default_indices(params, max_j, max_k)
    rep = NumericReport(f"eigenvalues {name}", tol)
    for er in eigen_check(params, indices, level=level):
        rep.record(max(er.rel_error, er.residual), er.index.label())
    return rep


def _transform_checks(quick: bool, m: int | None) -> list[tuple[str, Check]]:
    from . import transforms as tr

    out: list[tuple[str, Check]] = []
    for name, (params, _, _) in EIGEN_CASES.items():
        if m is None or params.m == m:
            out.append((f"eigenvalues {name}", lambda n=name: eigen_suite_check(n, quick)))
    if m in (None, 4):
        out.append(("eigenvalue products m=4", lambda: tr.eigen_product_check(4, 10)))
        js = (1,) if quick else (0, 1, 2)
        for j in js:
            out.append((f"inversion m=4 j={j}", lambda j=j: tr.inversion_check(4, j)))
    if m in (None, 2):
        for c in (0.0, 1.0):
            for ell in (0, 1):
                out.append((f"Bochner c={c:g} l={ell}", lambda c=c, ell=ell: tr.bochner_check(c, ell)))
        settings = [(0.0, 0.5), (1.0, 1.0)] if quick else [(c, s) for c in (0.0, 1.0) for s in (0.5, 1.0)]
        for c, s in settings:
            out.append((f"master formula c={c:g} s={s:g}", lambda c=c, s=s: tr.master_formula_check(2, c, s)))
        out.append(("Heisenberg equality", lambda: heisenberg_check(quick)))
        out.append(("unitarity cft m=2", lambda: unitarity_case("cft")))
        out.append(("unitarity deformed c=1 m=2", lambda: unitarity_case("deformed")))
        cidx = [tr.BasisIndex("clifford_hermite", p, k) for p, k in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        sidx = [tr.BasisIndex("scalar_hermite", j, k) for j, k in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        out.append(("calculus cft m=2", lambda: tr.calculus_check("cft", 2)))
        out.append(("calculus cft_class m=2", lambda: tr.calculus_check("cft_class", 2)))
        out.append(("calculus cft_fractional m=2", lambda: tr.calculus_check("cft_fractional", 2)))
        out.append(("calculus deformed c=1 m=2", lambda: tr.calculus_check("deformed_semigroup", 2)))
        out.append(("semigroup fractional m=2", lambda: tr.semigroup_check(2, math.pi / 3, math.pi / 4, sidx)))
        out.append(("factorization cft m=2", lambda: tr.factorization_check("cft", 2, cidx)))
        out.append(("factorization cft_fractional m=2", lambda: tr.factorization_check("cft_fractional", 2, cidx)))
        out.append(("Dunkl integration by parts", lambda: tr.dunkl_integration_by_parts()))
    if m in (None, 4) and not quick:
        one = [tr.BasisIndex("clifford_hermite", 0, 1)]
        out.append(("calculus cft m=4", lambda: tr.calculus_check("cft", 4, one, level=0)))
    out.append(("finite order", lambda: tr.finite_order_check()))
    return out


HEISENBERG_CASES = ((2, 0.0), (2, 1.0), (3, 1.0))


def heisenberg_check(quick: bool = False, tol: float = 1e-5) -> NumericReport:
    """Gaussians attain ``delta/2``; the deformed Laguerre function ``psi_{2,0}`` exceeds it."""
    from .transforms import heisenberg_ratio
    from .transforms.basis import BasisIndex, eval_basis

    rep = NumericReport("Heisenberg equality case", tol)
    cases = HEISENBERG_CASES[:1] if quick else HEISENBERG_CASES
    for m, c in cases:
        delta = KernelParams("deformed_semigroup", m, c=c).delta
        ratio = heisenberg_ratio(lambda r: np.exp(-r * r / 2), c, m)
        rep.record(abs(ratio - delta / 2), f"Gaussian m={m} c={c:g}: ratio {ratio:.12g}")
    params = KernelParams("deformed_semigroup", 2, c=1.0)
    idx = BasisIndex("deformed", 2, 0)

    def psi20(r):
        pts = np.zeros((np.size(r), 2))
        pts[:, 0] = np.ravel(r)
        return eval_basis(idx, params, pts)[:, 0].real.reshape(np.shape(r))

    ratio = heisenberg_ratio(psi20, 1.0, 2)
    # strict inequality: record a failure (infinite error) if it does not hold
    gap = ratio - params.delta / 2
    rep.record(0.0 if gap > 1e-3 else math.inf, f"psi_(2,0) ratio {ratio:.8g} > {params.delta / 2:g}")
    return rep


def unitarity_case(which: str, tol: float = 1e-6) -> NumericReport:
    from .transforms import default_indices, unitarity_check

    if which == "cft":
        params = KernelParams("cft", 2, mode="closed")
    else:
        params = KernelParams("deformed_semigroup", 2, c=1.0, mode="fourier")
    indices = default_indices(params, 2, 2, members=2)[:10]
    return unitarity_check(params, indices, tol=tol)


# ================================================================ registry


def _algebra_checks(quick: bool, m: int | None) -> list[tuple[str, Check]]:
    dims = (2, 3, 4) if m is None else (m,)
    deg = 3 if quick else 5
    out: list[tuple[str, Check]] = [("osp relations", lambda: osp_suite(dims, deg))]
    out.append(("Dunkl sl2 relations", lambda: dunkl_sl2_suite(3 if quick else 4)))
    rad_dims = tuple(d for d in dims if d in (2, 3)) or (2,)
    cs = (1,) if quick else (Fraction(1, 2), 1, 3)
    out.append(("deformed osp relations", lambda: osp_rad_suite(cs, rad_dims, 2 if quick else 3)))
    out.append(("D^2 expansion", lambda: dsquare_suite(dims=rad_dims)))
    out.append(("ladder and oscillator", lambda: ladder_suite(t_max=2 if quick else 3)))
    out.append(("Dunkl commutativity", lambda: dunkl_commute_check(3 if quick else 4)))
    out.append(("Gamma and radial powers", lambda: gamma_radial_check()))
    return out


def _specfun_checks(quick: bool, m: int | None) -> list[tuple[str, Check]]:
    return [
        ("Bessel recurrence", bessel_recurrence_check),
        ("Gegenbauer derivative", gegenbauer_derivative_check),
        ("Laguerre orthogonality", laguerre_orthogonality_check),
        ("Laguerre-Hankel integral", laguerre_hankel_check),
        ("Bessel-Gaussian integral", bessel_gaussian_integral_check),
    ]


def _harmonics_checks(quick: bool, m: int | None) -> list[tuple[str, Check]]:
    dims = (2, 3, 4) if m is None else (m,)
    kmax = 1 if quick else 2
    return [
        ("monogenic bases", lambda: monogenic_check(dims, kmax)),
        ("Gamma eigenvalues", lambda: gamma_eigen_check(dims, kmax)),
        ("Funk-Hecke", lambda: funk_hecke_check(3, 2 if quick else 4)),
        ("reproducing kernels", lambda: reproducing_kernel_check(tuple(d for d in dims if d in (2, 3)) or (2,), 2 if quick else 3)),
        ("Pin equivariance", lambda: pin_equivariance_check(1 if quick else 2)),
    ]


def _kernel_checks(quick: bool, m: int | None) -> list[tuple[str, Check]]:
    out: list[tuple[str, Check]] = []
    for fam, dim, extra in CROSS_VALIDATION_CASES:
        if m is None or dim == m:
            label = " ".join(f"{k}={v:.4g}" for k, v in extra.items())
            out.append((f"series vs closed {fam} m={dim} {label}".rstrip(), lambda f=fam, d=dim, e=extra: cross_validation_check(f, d, e)))
    even = (2, 4) if m is None else ((m,) if m % 2 == 0 else ())
    for d in even:
        out.append((f"Clifford-Fourier system m={d}", lambda d=d: kprops.cf_system_check(d)))
        out.append((f"fractional system m={d}", lambda d=d: kprops.simple_system_check(d)))
        out.append((f"growth bound m={d}", lambda d=d: kprops.bound_scan(d)))
        out.append((f"K+/K- relation m={d}", lambda d=d: kprops.plus_minus_check(d)))
        if d >= 4:
            for j in range(d - 1):
                out.append((f"growth bound K^{j} m={d}", lambda d=d, j=j: kprops.bound_scan(d, j)))
    if m is None or m in (4, 6):
        out.append(("recursion lam 1->2", lambda: kprops.recursion_check(2)))
    for d in (2, 3) if m is None else ((m,) if m in (2, 3) else ()):
        out.append((f"spin equivariance m={d}", lambda d=d: kprops.spin_equivariance_check(d)))
    return out


SUITES: dict[str, Callable[[bool, int | None], list[tuple[str, Check]]]] = {
    "algebra": _algebra_checks,
    "specfun": _specfun_checks,
    "harmonics": _harmonics_checks,
    "kernels": _kernel_checks,
    "transforms": _transform_checks,
}


def suite_checks(name: str, quick: bool = False, m: int | None = None) -> list[tuple[str, Check]]:
    if name == "all":
        return [item for key in SUITES for item in SUITES[key](quick, m)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name](quick, m)


def report_summary(name: str, report, seconds: float) -> dict:
    """Flatten one check result (a report or a list of exact reports) to a JSON-ready record."""
    reports = report if isinstance(report, list) else [report]
    passed = all(r.passed for r in reports) and len(reports) > 0
    numeric = [r for r in reports if isinstance(r, NumericReport)]
    if numeric:
        max_error = max(r.max_error for r in numeric)
        tolerance = min(r.tolerance for r in numeric)
    else:
        max_error = float(sum(r.failures for r in reports))
        tolerance = 0.0
    failing = next((r for r in reports if not r.passed), None)
    out = {
        "name": name,
        "status": "pass" if passed else "fail",
        "max_error": max_error,
        "tolerance": tolerance,
        "checked": sum(r.checked for r in reports),
        "seconds": round(seconds, 3),
    }
    if failing is not None:
        out["first_failure"] = getattr(failing, "counterexample", None) or failing.name
    return out


def run_checks(checks: list[tuple[str, Check]], progress: Callable[[dict], None] | None = None) -> list[dict]:
    out = []
    for name, thunk in checks:
        start = time.perf_counter()
        try:
            rep = thunk()
            rec = report_summary(name, rep, time.perf_counter() - start)
        except Exception as exc:  # a crashing check is a failing check
            rec = {
                "name": name,
                "status": "error",
                "max_error": None,
                "tolerance": None,
                "checked": 0,
                "seconds": round(time.perf_counter() - start, 3),
                "first_failure": f"{type(exc).__name__}: {exc}",
            }
        out.append(rec)
        if progress is not None:
            progress(rec)
    return out
