"""Exact verification of operator identities on truncated function spaces.

An identity ``lhs == rhs`` between linear operators is proved on a finite
subspace by applying both sides to every spanning element
``r**s * x**alpha * e_A`` (optionally Gaussian-flagged) and comparing the
canonical forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..specfun import laguerre_coefficients
from .operators import (
    DeformedD,
    Dirac,
    DunklLaplace,
    DunklT,
    Euler,
    Laplace,
    LeftMul,
    MultRPow,
    MultX,
    MultXVec,
    Operator,
    anticommutator,
    commutator,
)
from ..multivector import Multivector
from .poly import QuasiPolynomial
from .roots import RootSystem

__all__ = [
    "CheckReport",
    "identity_check",
    "spanning_set",
    "osp_relations",
    "dunkl_sl2_relations",
    "osp_rad_relations",
    "dsquare_expand",
    "psi_c",
    "ladder_check",
    "gamma_ell",
    "beta_ell",
    "ladder_constant",
]


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: str | None = None
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.failures == 0

    def record(self, ok: bool, where: str) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = where

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


def _multi_indices(dim: int, max_degree: int):
    for total in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(dim), total):
            a = [0] * dim
            for i in combo:
                a[i] += 1
            yield tuple(a)


def spanning_set(
    dim: int,
    degree_bound: int,
    radial_exponents: Iterable = (0,),
    gaussian: bool = False,
    blades: Sequence[int] | None = None,
) -> list[QuasiPolynomial]:
    """All ``r**s x**alpha e_A`` with ``|alpha| <= degree_bound``."""
    blades = range(1 << dim) if blades is None else blades
    seen = []
    for s in radial_exponents:
        for a in _multi_indices(dim, degree_bound):
            for b in blades:
                seen.append(QuasiPolynomial.monomial(dim, a, s=Fraction(s), blade=b, gaussian=gaussian))
    return seen


def identity_check(
    lhs: Operator,
    rhs: Operator,
    dim: int,
    degree_bound: int,
    radial_exponents: Iterable = (0,),
    gaussian: bool = False,
    blades: Sequence[int] | None = None,
    name: str = "identity",
) -> CheckReport:
    """Apply both sides to a spanning set and compare exactly."""
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    report = CheckReport(name)
    for f in spanning_set(dim, degree_bound, radial_exponents, gaussian, blades):
        diff = lhs.apply(f) - rhs.apply(f)
        report.record(diff.is_zero(), f"input {f!r}: lhs - rhs = {diff.canonical()!r}")
    return report


# ---------------------------------------------------------------- families


def osp_relations(dim: int) -> list[tuple[str, Operator, Operator]]:
    """The ten relations between the vector variable and the Dirac operator."""
    x, d, lap, r2 = MultXVec(), Dirac(), Laplace(), MultRPow(2)
    h = Euler() + Fraction(dim, 2)
    return [
        ("{x,x} = -2|x|^2", anticommutator(x, x), -2 * r2),
        ("{D,D} = -2 Lap", anticommutator(d, d), -2 * lap),
        ("{x,D} = -2(E+m/2)", anticommutator(x, d), -2 * h),
        ("[E+m/2,D] = -D", commutator(h, d), -1 * d),
        ("[|x|^2,D] = -2x", commutator(r2, d), -2 * x),
        ("[E+m/2,x] = x", commutator(h, x), 1 * x),
        ("[Lap,x] = 2D", commutator(lap, x), 2 * d),
        ("[E+m/2,Lap] = -2Lap", commutator(h, lap), -2 * lap),
        ("[Lap,|x|^2] = 4(E+m/2)", commutator(lap, r2), 4 * h),
        ("[E+m/2,|x|^2] = 2|x|^2", commutator(h, r2), 2 * r2),
    ]


def dunkl_sl2_relations(roots: RootSystem) -> list[tuple[str, Operator, Operator]]:
    lap, r2 = DunklLaplace(roots), MultRPow(2)
    h = Euler() + roots.mu / 2
    return [
        ("[Lap_k,|x|^2] = 4(E+mu/2)", commutator(lap, r2), 4 * h),
        ("[Lap_k,E+mu/2] = 2Lap_k", commutator(lap, h), 2 * lap),
        ("[|x|^2,E+mu/2] = -2|x|^2", commutator(r2, h), -2 * r2),
    ]


def delta_parameter(c, roots: RootSystem) -> Fraction:
    return 1 + (roots.mu - 1) / (1 + Fraction(c))


def osp_rad_relations(c, roots: RootSystem, odd_gamma_coeffs: Sequence = ()) -> list[tuple[str, Operator, Operator]]:
    """The eight relations of the radially deformed realisation."""
    c = Fraction(c)
    dd = DeformedD(c, roots, odd_gamma_coeffs)
    x = MultXVec()
    x2 = x @ x
    d2 = dd @ dd
    h = Euler() + delta_parameter(c, roots) / 2
    k = 1 + c
    return [
        ("{x,D} = -2(1+c)(E+delta/2)", anticommutator(x, dd), (-2 * k) * h),
        ("[E+delta/2,D] = -D", commutator(h, dd), -1 * dd),
        ("[x^2,D] = 2(1+c)x", commutator(x2, dd), (2 * k) * x),
        ("[E+delta/2,x] = x", commutator(h, x), 1 * x),
        ("[D^2,x] = -2(1+c)D", commutator(d2, x), (-2 * k) * dd),
        ("[E+delta/2,D^2] = -2D^2", commutator(h, d2), -2 * d2),
        ("[D^2,x^2] = 4(1+c)^2(E+delta/2)", commutator(d2, x2), (4 * k * k) * h),
        ("[E+delta/2,x^2] = 2x^2", commutator(h, x2), 2 * x2),
    ]


def dsquare_expand(c, roots: RootSystem) -> Operator:
    """Closed expansion of the square of the deformed Dirac operator.

    Uses ``r^-1 d_r = r^-2 E`` and ``d_r^2 = r^-2 (E^2 - E)``.
    """
    c = Fraction(c)
    if c <= -1:
        raise ValueError("deformation parameter must exceed -1")
    dim = roots.dim
    out: Operator = -1 * DunklLaplace(roots)
    if not c:
        return out
    e = Euler()
    rm2 = MultRPow(-2)
    out = out - (c * roots.mu) * (rm2 @ e)
    out = out - (c * c + 2 * c) * (rm2 @ (e @ e - e))
    ts = [DunklT(i + 1, roots) for i in range(dim)]
    radial = None
    for i in range(dim):
        term = MultX(i + 1) @ ts[i]
        radial = term if radial is None else radial + term
    out = out + c * (rm2 @ radial)
    for i in range(dim):
        for j in range(i + 1, dim):
            eij = LeftMul(Multivector.blade(dim, (1 << i) | (1 << j)))
            ang = MultX(i + 1) @ ts[j] - MultX(j + 1) @ ts[i]
            out = out - c * (rm2 @ eij @ ang)
    return out


# ------------------------------------------------------------------ ladder


def gamma_ell(c, ell: int, roots: RootSystem) -> Fraction:
    c = Fraction(c)
    return 2 / (1 + c) * (ell + (roots.mu - 2) / 2) + (c + 2) / (1 + c)


def beta_ell(c, ell: int) -> Fraction:
    c = Fraction(c)
    return -c / (1 + c) * ell


def ladder_constant(c, t: int, ell: int, roots: RootSystem) -> Fraction:
    """``C(t, ell)``: ``4(1+c)^2 (t/2)`` for even ``t``, ``2(1+c)^2(gamma_ell + t - 1)`` for odd ``t``."""
    c = Fraction(c)
    k2 = (1 + c) ** 2
    if t % 2 == 0:
        return 4 * k2 * (t // 2)
    return 2 * k2 * (gamma_ell(c, ell, roots) + 2 * (t // 2))


def psi_c(c, t: int, ell: int, monogenic: QuasiPolynomial, roots: RootSystem) -> QuasiPolynomial:
    """Generalised Clifford-Laguerre function with full index ``t`` (even and odd)."""
    c = Fraction(c)
    if c <= -1:
        raise ValueError("deformation parameter must exceed -1")
    if t < 0:
        return QuasiPolynomial.zero(monogenic.dim, True)
    half = t // 2
    g = gamma_ell(c, ell, roots)
    lag_alpha = g / 2 - 1 if t % 2 == 0 else g / 2
    coeffs = laguerre_coefficients(half, lag_alpha)
    pref = Fraction(2 * (1 + c)) ** t * _factorial(half)
    if t % 2:
        pref = -pref
    beta = beta_ell(c, ell)
    base = monogenic.with_terms(monogenic.terms, gaussian=True)
    if t % 2:
        base = MultXVec().apply(base)
    out = QuasiPolynomial.zero(monogenic.dim, True)
    for i, a in enumerate(coeffs):
        if a:
            out = out + MultRPow(2 * i + beta).apply(base) * (a * pref)
    return out


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def ladder_check(c, t: int, ell: int, monogenic: QuasiPolynomial, roots: RootSystem) -> CheckReport:
    """Verify the creation/annihilation actions and the oscillator eigenvalue."""
    c = Fraction(c)
    dd = DeformedD(c, roots)
    x = MultXVec()
    a_plus = dd - (1 + c) * x
    a_minus = dd + (1 + c) * x
    psi = psi_c(c, t, ell, monogenic, roots)
    report = CheckReport(f"ladder c={c} t={t} ell={ell}")
    report.record(a_plus.apply(psi) == psi_c(c, t + 1, ell, monogenic, roots), "A+ psi_t != psi_{t+1}")
    cst = ladder_constant(c, t, ell, roots)
    report.record(a_minus.apply(psi) == psi_c(c, t - 1, ell, monogenic, roots) * cst, "A- psi_t != C psi_{t-1}")
    ham = dd @ dd - (1 + c) ** 2 * (x @ x)
    eig = (1 + c) ** 2 * (gamma_ell(c, ell, roots) + 2 * t)
    report.record(ham.apply(psi) == psi * eig, "oscillator eigenvalue")
    return report
