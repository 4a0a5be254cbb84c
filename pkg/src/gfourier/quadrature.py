"""Product quadrature rules on half-lines, spheres and R^m.

Radial integrals ``int_0^inf f(r) r^beta exp(-b r^a) dr`` are mapped by
``u = b r^a`` to generalised Gauss-Laguerre rules.  Spheres use the
trapezoid rule on S^1 and a recursive Gauss-Jacobi split
``x = (t, sqrt(1 - t^2) xi)`` on higher spheres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.special import roots_genlaguerre, roots_jacobi, roots_legendre

__all__ = [
    "RadialRule",
    "QuadratureRule",
    "radial_rule",
    "legendre_radial_rule",
    "sphere_rule",
    "rm_rule",
    "product_rule",
    "cartesian_rule",
    "sqrt_radial_rm_rule",
    "zonal_rule",
]


@dataclass(frozen=True)
class RadialRule:
    """Nodes ``r_i`` and weights for ``int f(r) r^beta exp(-b r^a) dr``."""

    nodes: np.ndarray
    weights: np.ndarray
    beta: float
    a: float = 2.0
    b: float = 1.0

    def plain_weights(self) -> np.ndarray:
        """Weights for ``int f(r) dr``: the declared weight is divided out."""
        r = self.nodes
        if self.b == 0:
            return self.weights * r ** (-self.beta)
        return self.weights * np.exp(self.b * r**self.a - self.beta * np.log(r))

    def integrate(self, values) -> np.ndarray:
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def radial_rule(n: int, beta: float, a: float = 2.0, b: float = 1.0) -> RadialRule:
    """Gauss rule exact for ``f`` polynomial of degree ``< 2n`` in ``u = b r^a``."""
    if n < 1:
        raise ValueError("need at least one node")
    if beta <= -1:
        raise ValueError("radial weight exponent must exceed -1")
    if a <= 0 or b <= 0:
        raise ValueError("decay parameters must be positive")
    alpha = (beta + 1.0) / a - 1.0
    u, w = roots_genlaguerre(n, alpha)
    r = (u / b) ** (1.0 / a)
    scale = 1.0 / (a * b ** ((beta + 1.0) / a))
    return RadialRule(r, w * scale, float(beta), float(a), float(b))


def legendre_radial_rule(n: int, radius: float) -> RadialRule:
    """Gauss-Legendre rule on ``[0, radius]`` for ``int f(r) dr`` (no weight)."""
    t, w = roots_legendre(n)
    r = (t + 1.0) * radius / 2.0
    return RadialRule(r, w * radius / 2.0, 0.0, 2.0, 0.0)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes in R^m with weights for ``int f(x) W(x) dx`` where ``W`` is ``declared_weight``."""

    nodes: np.ndarray
    weights: np.ndarray
    declared_weight: str
    accuracy_degree: int

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def integrate(self, values) -> np.ndarray:
        """Sum ``w_i f(x_i)`` over the leading axis of ``values``."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def reweighted(self, fn: Callable[[np.ndarray], np.ndarray], label: str) -> "QuadratureRule":
        return replace(self, weights=self.weights * fn(self.nodes), declared_weight=f"{self.declared_weight} * {label}")


def sphere_rule(m: int, resolution: int) -> QuadratureRule:
    """Rule on ``S^{m-1}`` exact for polynomials of degree ``< resolution``."""
    if m < 1:
        raise ValueError("dimension must be positive")
    if resolution < 1:
        raise ValueError("resolution must be positive")
    if m == 1:
        return QuadratureRule(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), "counting measure on {-1, 1}", 10**9)
    if m == 2:
        th = 2.0 * math.pi * np.arange(resolution) / resolution
        nodes = np.stack([np.cos(th), np.sin(th)], axis=1)
        return QuadratureRule(nodes, np.full(resolution, 2.0 * math.pi / resolution), "dsigma on S^1", resolution - 1)
    lower = sphere_rule(m - 1, resolution)
    n_t = max(1, (resolution + 1) // 2)
    half = (m - 3) / 2.0
    t, wt = roots_jacobi(n_t, half, half)
    s = np.sqrt(1.0 - t * t)
    nodes = np.concatenate([np.column_stack([np.full(len(lower), ti), si * lower.nodes]) for ti, si in zip(t, s)])
    weights = np.concatenate([wi * lower.weights for wi in wt])
    return QuadratureRule(nodes, weights, f"dsigma on S^{m - 1}", min(lower.accuracy_degree, 2 * n_t - 1))


def product_rule(radial: RadialRule, sphere: QuadratureRule, plain: bool = True) -> QuadratureRule:
    """Tensor product ``x = r xi``; ``plain`` weights integrate ``f(x) dx``."""
    m = sphere.dim
    rw = radial.plain_weights() if plain else radial.weights
    rw = rw * radial.nodes ** (m - 1)
    nodes = (radial.nodes[:, None, None] * sphere.nodes[None, :, :]).reshape(-1, m)
    weights = (rw[:, None] * sphere.weights[None, :]).reshape(-1)
    if plain:
        label = "dx"
    else:
        extra = radial.beta
        label = f"|x|^{extra:g} exp(-{radial.b:g}|x|^{radial.a:g}) dx"
    return QuadratureRule(nodes, weights, label, sphere.accuracy_degree)


def rm_rule(m: int, radial_beta: float, n_r: int, sphere_resolution: int, a: float = 2.0, b: float = 1.0, plain: bool = True) -> QuadratureRule:
    """Rule on R^m built from a Gauss-Laguerre radial rule tuned to ``r^radial_beta exp(-b r^a)``.

    With ``plain=False`` the weights integrate against ``|x|^(radial_beta - m + 1) exp(-b|x|^a) dx``.
    With ``plain=True`` (default) that weight is divided back out, so the
    rule integrates ``f(x) dx`` and is accurate when ``f`` itself carries a
    matching decay and power.
    """
    rad = radial_rule(n_r, radial_beta, a, b)
    if plain:
        return product_rule(rad, sphere_rule(m, sphere_resolution), True)
    shifted = RadialRule(rad.nodes, rad.weights * rad.nodes ** (-(m - 1.0)), rad.beta - (m - 1), a, b)
    return product_rule(shifted, sphere_rule(m, sphere_resolution), False)


def cartesian_rule(exponents, n: int, b: float = 0.5) -> QuadratureRule:
    """Tensor rule on R^m for ``prod_i |x_i|^(e_i) exp(-b x_i^2)``, reported as plain ``dx`` weights.

    Each axis folds a generalised Gauss-Laguerre rule onto both half-lines,
    so even parts are integrated exactly and odd parts cancel by symmetry.
    """
    exps = [float(e) for e in exponents]
    axes = []
    for e in exps:
        rad = radial_rule(n, e, 2.0, b)
        pts = np.concatenate([rad.nodes, -rad.nodes])
        w = np.concatenate([rad.plain_weights(), rad.plain_weights()])
        axes.append((pts, w))
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    nodes = np.stack([g.reshape(-1) for g in grids], axis=1)
    weights = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
    return QuadratureRule(nodes, weights, "dx", 2 * n - 1)


def sqrt_radial_rm_rule(m: int, radius: float, n_rho: int, sphere_resolution: int) -> QuadratureRule:
    """Plain ``dx`` rule on the ball of given radius, Gauss-Legendre in ``rho = sqrt(r)``.

    Radial factors ``r^(n/2)`` become polynomials in ``rho``, which suits
    integrands carrying half-integer powers of ``|x|``.
    """
    t, w = roots_legendre(n_rho)
    top = math.sqrt(radius)
    rho = (t + 1.0) * top / 2.0
    wr = w * top / 2.0 * 2.0 * rho * (rho * rho) ** (m - 1)
    rad = RadialRule(rho * rho, wr, 0.0, 2.0, 0.0)
    sph = sphere_rule(m, sphere_resolution)
    nodes = (rad.nodes[:, None, None] * sph.nodes[None, :, :]).reshape(-1, m)
    weights = (rad.weights[:, None] * sph.weights[None, :]).reshape(-1)
    return QuadratureRule(nodes, weights, "dx", sph.accuracy_degree)


def zonal_rule(m: int, radius: float, n_rho: int, n_w: int) -> QuadratureRule:
    """Plain ``dx`` rule exact only for integrands invariant under rotations fixing ``e_1``.

    The sphere integral of a zonal function reduces to
    ``|S^{m-2}| int_{-1}^{1} g(w) (1 - w^2)^{(m-3)/2} dw``; nodes are placed in
    the ``(e_1, e_2)`` plane at ``+-sqrt(1 - w^2)`` so that odd parts cancel.
    Radially the rule is Gauss-Legendre in ``sqrt(r)`` on ``[0, radius]``.
    """
    if m < 2:
        raise ValueError("zonal rules need m >= 2")
    half = (m - 3) / 2.0
    w, ww = roots_jacobi(n_w, half, half)
    lower_area = 2.0 if m == 2 else 2.0 * math.pi ** ((m - 1) / 2.0) / math.gamma((m - 1) / 2.0)
    t, wt = roots_legendre(n_rho)
    top = math.sqrt(radius)
    rho = (t + 1.0) * top / 2.0
    r = rho * rho
    wr = wt * top / 2.0 * 2.0 * rho * r ** (m - 1)
    sq = np.sqrt(1.0 - w * w)
    dirs = np.zeros((2 * n_w, m))
    dirs[:n_w, 0] = w
    dirs[:n_w, 1] = sq
    dirs[n_w:, 0] = w
    dirs[n_w:, 1] = -sq
    dw = np.concatenate([ww, ww]) * lower_area / 2.0
    nodes = (r[:, None, None] * dirs[None, :, :]).reshape(-1, m)
    weights = (wr[:, None] * dw[None, :]).reshape(-1)
    return QuadratureRule(nodes, weights, "dx", 2 * n_w - 1)
