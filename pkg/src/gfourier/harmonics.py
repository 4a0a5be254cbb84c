"""Exact bases of (Dunkl) spherical harmonics and monogenics, Fischer
projections, reproducing kernels and sphere moments."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactpoly.checks import _multi_indices
from .exactpoly.operators import (
    Dirac,
    DunklDirac,
    DunklLaplace,
    Laplace,
    Operator,
    mul_xvec,
    reflect_function,
)
from .exactpoly.poly import QuasiPolynomial
from .exactpoly.roots import RootSystem
from .multivector import Multivector
from .specfun import gegenbauer, gegenbauer_table

__all__ = [
    "AngularBasis",
    "build_basis",
    "expected_dimension",
    "nullspace",
    "fischer_project",
    "NotHarmonicError",
    "repr_kernel",
    "sphere_moment",
    "sphere_area",
    "weighted_sphere_moment",
    "gram_matrix",
    "orthonormalize",
    "pin_action",
]

KINDS = ("harmonic", "monogenic", "dunkl_harmonic", "dunkl_monogenic")


class NotHarmonicError(ValueError):
    pass


@dataclass(frozen=True)
class AngularBasis:
    dim: int
    degree: int
    kind: str
    elements: tuple[QuasiPolynomial, ...]
    roots: RootSystem | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def defining_operator(self) -> Operator:
        return _defining_operator(self.kind, self.roots)

    def gram(self) -> np.ndarray:
        return gram_matrix(self.elements, self.roots if self.kind.startswith("dunkl") else None)

    def to_records(self) -> dict:
        return {
            "m": self.dim,
            "k": self.degree,
            "kind": self.kind,
            "dimension": len(self.elements),
            "elements": [e.to_records() for e in self.elements],
        }


def expected_dimension(m: int, k: int, kind: str) -> int:
    """Real dimension of the space (Dunkl versions match the classical ones)."""
    if kind in ("harmonic", "dunkl_harmonic"):
        full = math.comb(k + m - 1, m - 1)
        return full - (math.comb(k + m - 3, m - 1) if k >= 2 else 0)
    if kind in ("monogenic", "dunkl_monogenic"):
        return (1 << m) * math.comb(k + m - 2, m - 2)
    raise ValueError(f"unknown basis kind {kind!r}")


def _defining_operator(kind: str, roots: RootSystem | None) -> Operator:
    if kind == "harmonic":
        return Laplace()
    if kind == "monogenic":
        return Dirac()
    if roots is None:
        raise ValueError("Dunkl bases need a root system")
    if kind == "dunkl_harmonic":
        return DunklLaplace(roots)
    if kind == "dunkl_monogenic":
        return DunklDirac(roots)
    raise ValueError(f"unknown basis kind {kind!r}")


def nullspace(columns: list[dict], n_unknowns: int) -> list[list]:
    """Exact nullspace of a sparse matrix given column-wise as ``{row_key: value}``.

    Works over any exact field whose elements support ``+ - * /`` and truth testing.
    """
    rows: dict = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            rows.setdefault(key, {})[j] = v
    mat = [r for r in rows.values() if r]
    pivots: list[int] = []
    reduced: list[dict] = []
    for row in mat:
        row = dict(row)
        for prow, p in zip(reduced, pivots):
            if p in row:
                f = row[p]
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p] if not isinstance(row[p], int) else Fraction(1, row[p])
        row = {j: v * inv for j, v in row.items()}
        # keep previously reduced rows free of the new pivot
        for i, prow in enumerate(reduced):
            if p in prow:
                f = prow[p]
                for j, v in row.items():
                    nv = prow.get(j, 0) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        reduced.append(row)
        pivots.append(p)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_unknowns):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n_unknowns
        vec[free] = Fraction(1)
        for prow, p in zip(reduced, pivots):
            if free in prow:
                vec[p] = -prow[free]
        basis.append(vec)
    return basis


def build_basis(m: int, k: int, kind: str, roots: RootSystem | None = None) -> AngularBasis:
    """Exact basis of the kernel of the defining operator on degree-``k`` polynomials."""
    if kind not in KINDS:
        raise ValueError(f"unknown basis kind {kind!r}")
    if k < 0:
        raise ValueError("degree must be non-negative")
    if kind.endswith("monogenic") and m < 2:
        raise ValueError("monogenics need m >= 2")
    if kind.startswith("dunkl"):
        if roots is None:
            roots = RootSystem.trivial(m)
        if roots.dim != m:
            raise ValueError("root system dimension does not match m")
    op = _defining_operator(kind, roots)
    alphas = [a for a in _multi_indices(m, k) if sum(a) == k]
    blades = range(1 << m) if kind.endswith("monogenic") else (0,)
    unknowns = [(a, b) for a in alphas for b in blades]
    columns = []
    for a, b in unknowns:
        img = op.apply(QuasiPolynomial.monomial(m, a, blade=b)).canonical()
        columns.append(dict(img.terms))
    vecs = nullspace(columns, len(unknowns))
    elements = []
    for vec in vecs:
        terms = {(Fraction(0), a, b): v for (a, b), v in zip(unknowns, vec) if v}
        elements.append(QuasiPolynomial(m, terms))
    basis = AngularBasis(m, k, kind, tuple(elements), roots if kind.startswith("dunkl") else None)
    for e in elements:
        if not op.apply(e).is_zero():  # pragma: no cover - guards the elimination
            raise ArithmeticError("nullspace vector is not annihilated")
    return basis


# -------------------------------------------------------------- Fischer


def fischer_project(h: QuasiPolynomial, roots: RootSystem | None = None) -> tuple[QuasiPolynomial, QuasiPolynomial]:
    """Split a homogeneous (Dunkl) harmonic into monogenic and ``x M_{k-1}`` parts."""
    k = h.degree()
    lap = Laplace() if roots is None else DunklLaplace(roots)
    if not lap.apply(h).is_zero():
        raise NotHarmonicError("input is not annihilated by the Laplacian")
    if any(s != 0 or sum(a) != k for s, a, _ in h.canonical().terms):
        raise NotHarmonicError("input is not a homogeneous polynomial")
    d = Dirac() if roots is None else DunklDirac(roots)
    mu = h.dim if roots is None else roots.mu
    denom = 2 * k + mu - 2
    if denom == 0:
        return h, QuasiPolynomial.zero(h.dim)
    xd = mul_xvec(d.apply(h)) * (1 / Fraction(denom))
    p1 = (h + xd).canonical()
    p2 = (-xd).canonical()
    return p1, p2


# ---------------------------------------------------- reproducing kernels


def repr_kernel(k: int, xp, yp) -> tuple[Multivector, Multivector]:
    """Reproducing kernels ``P_k`` and ``Q_{k-1}`` of the monogenic spaces.

    ``m = 2`` uses the continuous limit of the Gegenbauer normalisations.
    """
    xp = np.asarray(xp, dtype=float)
    yp = np.asarray(yp, dtype=float)
    m = xp.size
    if not (abs(np.linalg.norm(xp) - 1) < 1e-12 and abs(np.linalg.norm(yp) - 1) < 1e-12):
        raise ValueError("arguments must be unit vectors")
    lam = (m - 2) / 2
    w = float(np.clip(xp @ yp, -1.0, 1.0))
    wedge = {}
    for i in range(m):
        for j in range(i + 1, m):
            v = xp[i] * yp[j] - xp[j] * yp[i]
            if v:
                wedge[(1 << i) | (1 << j)] = v
    if k == 0:
        return Multivector.scalar(m, 1.0), Multivector(m, {})
    g = float(gegenbauer_table(k, lam, np.array(w), "limit_scaled")[k])
    sc_p = (k + 2 * lam) / (k + lam) * g / 2
    sc_q = k / (k + lam) * g / 2
    cl = float(gegenbauer(k - 1, lam + 1, w))
    p = {0: sc_p, **{b: -cl * v for b, v in wedge.items()}}
    q = {0: sc_q, **{b: cl * v for b, v in wedge.items()}}
    return Multivector(m, p), Multivector(m, q)


# ---------------------------------------------------------- sphere moments


def _half_gamma(n2: int) -> tuple[Fraction, int]:
    """``Gamma(n2/2)`` as ``(rational, power of sqrt(pi))``."""
    if n2 % 2 == 0:
        return Fraction(math.factorial(n2 // 2 - 1)), 0
    # Gamma(n + 1/2) = (2n-1)!! / 2^n sqrt(pi)
    n = (n2 - 1) // 2
    num = 1
    for v in range(1, 2 * n, 2):
        num *= v
    return Fraction(num, 2**n), 1


def sphere_moment(alpha: Sequence[int], m: int | None = None) -> tuple[Fraction, int]:
    """``int_{S^{m-1}} x^alpha dsigma`` as ``(q, p)`` meaning ``q * pi**p``."""
    alpha = tuple(alpha)
    m = len(alpha) if m is None else m
    if len(alpha) != m:
        raise ValueError("multi-index length must equal m")
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be non-negative")
    if any(a % 2 for a in alpha):
        return Fraction(0), m // 2
    num = Fraction(2)
    sqrt_pi = 0
    for a in alpha:
        q, p = _half_gamma(a + 1)
        num *= q
        sqrt_pi += p
    q, p = _half_gamma(sum(alpha) + m)
    num /= q
    sqrt_pi -= p
    return num, sqrt_pi // 2


def sphere_area(m: int) -> float:
    return 2 * math.pi ** (m / 2) / math.gamma(m / 2)


def weighted_sphere_moment(alpha: Sequence[int], kappa: Sequence[float]) -> float:
    """``int x^alpha prod |x_i|^(2 kappa_i) dsigma`` for the coordinate-reflection weight."""
    if any(a % 2 for a in alpha):
        return 0.0
    logv = math.log(2.0)
    total = 0.0
    for a, k in zip(alpha, kappa):
        e = (a + 2 * float(k) + 1) / 2
        logv += math.lgamma(e)
        total += e
    return math.exp(logv - math.lgamma(total))


def _coord_kappas(roots: RootSystem) -> list[float]:
    if any(kind != "coord" for kind in roots.kinds):
        raise ValueError("weighted Gram matrices are available for coordinate reflections only")
    out = [0.0] * roots.dim
    for r, k in zip(roots.roots, roots.kappa):
        j = next(i for i, v in enumerate(r) if v)
        # w uses <alpha,x> with |alpha|^2 = 2, i.e. |sqrt2 x_j|^(2k)
        out[j] = float(k)
    return out


def gram_matrix(elements: Sequence[QuasiPolynomial], roots: RootSystem | None = None) -> np.ndarray:
    """``[int bar(f) g w dsigma]_0`` for real-coefficient homogeneous elements."""
    n = len(elements)
    if n == 0:
        return np.zeros((0, 0))
    m = elements[0].dim
    if roots is not None and roots.kappa and any(roots.kappa):
        kap = _coord_kappas(roots)
        scale = math.prod(2.0 ** float(k) for k in kap)

        def moment(a):
            return weighted_sphere_moment(a, kap) * scale
    else:

        def moment(a):
            q, p = sphere_moment(a, m)
            return float(q) * math.pi**p

    cache: dict = {}
    g = np.zeros((n, n))
    for i in range(n):
        fi = elements[i].canonical().terms
        for j in range(i, n):
            fj = elements[j].canonical().terms
            acc = 0.0
            for (s1, a1, b1), c1 in fi.items():
                for (s2, a2, b2), c2 in fj.items():
                    if b1 != b2:
                        continue
                    key = tuple(x + y for x, y in zip(a1, a2))
                    if key not in cache:
                        cache[key] = moment(key)
                    acc += float(c1) * float(c2) * cache[key]
            g[i, j] = g[j, i] = acc
    return g


def orthonormalize(basis: AngularBasis) -> list[QuasiPolynomial]:
    """Float-coefficient orthonormal basis (Cholesky of the exact-moment Gram matrix)."""
    g = basis.gram()
    chol = np.linalg.cholesky(g)
    inv = np.linalg.inv(chol)
    out = []
    for i in range(len(basis)):
        acc: dict = {}
        for j in range(i + 1):
            c = inv[i, j]
            if c == 0:
                continue
            for key, v in basis.elements[j].canonical().terms.items():
                acc[key] = acc.get(key, 0.0) + c * float(v)
        out.append(QuasiPolynomial(basis.dim, acc))
    return out


# ----------------------------------------------------------- Pin action


def pin_action(f: QuasiPolynomial, roots: RootSystem, idx: int) -> QuasiPolynomial:
    """``rho(s) f = s f(r_alpha x)`` with ``s`` proportional to the root vector."""
    g = reflect_function(f, roots, idx)
    root = roots.roots[idx]
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    for i, v in enumerate(root):
        if v:
            out = out + g.left_blade(1 << i, v)
    return out
