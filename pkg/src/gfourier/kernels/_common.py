"""Shared geometry and series machinery for the kernel evaluators."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Callable, Sequence

import numpy as np

from ..specfun import SeriesNonConvergence, jhat_ladder

MAX_TERMS = 400
TAIL = 5
T_SMALL = 1e-4


@dataclass
class PairGeometry:
    """Scalar invariants of point pairs ``(x_i, y_i)`` in R^m.

    ``unit_wedge`` holds the coefficients of ``xi ^ eta`` (unit directions),
    set to zero where either point vanishes; ``wedge`` is ``x ^ y`` itself.
    """

    x: np.ndarray
    y: np.ndarray
    r: np.ndarray
    s: np.ndarray
    z: np.ndarray
    inner: np.ndarray
    w: np.ndarray
    t: np.ndarray
    wedge: np.ndarray
    unit_wedge: np.ndarray

    @property
    def m(self) -> int:
        return self.x.shape[1]

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def subset(self, idx) -> "PairGeometry":
        return PairGeometry(*(getattr(self, f.name)[idx] for f in fields(self)))


# series length grows with z, so pairs are summed in groups of similar z
Z_BUCKETS = (0.0, 1.0, 2.0, 4.0, 7.0, 11.0, 16.0, 24.0, 36.0, 54.0)


def by_z_bucket(geo: "PairGeometry", fn: Callable[["PairGeometry"], np.ndarray]) -> np.ndarray:
    """Evaluate ``fn`` separately on groups of pairs with comparable ``z = |x||y|``."""
    which = np.searchsorted(Z_BUCKETS, geo.z, side="right")
    groups = np.unique(which)
    if groups.size <= 1:
        return fn(geo)
    out = None
    for g in groups:
        idx = np.nonzero(which == g)[0]
        part = fn(geo.subset(idx))
        if out is None:
            out = np.zeros((geo.n,) + part.shape[1:], dtype=part.dtype)
        out[idx] = part
    return out


def as_points(x, m: int | None = None) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError("points must be an (N, m) array or a single m-vector")
    if m is not None and arr.shape[1] != m:
        raise ValueError(f"expected points in R^{m}, got dimension {arr.shape[1]}")
    return arr


def geometry(x, y) -> PairGeometry:
    x = as_points(x)
    y = as_points(y, x.shape[1])
    x, y = np.broadcast_arrays(x, y)
    m = x.shape[1]
    r = np.linalg.norm(x, axis=1)
    s = np.linalg.norm(y, axis=1)
    z = r * s
    inner = np.einsum("ij,ij->i", x, y)
    size = 1 << m
    wedge = np.zeros((x.shape[0], size))
    for i in range(m):
        for j in range(i + 1, m):
            wedge[:, (1 << i) | (1 << j)] = x[:, i] * y[:, j] - x[:, j] * y[:, i]
    t = np.sqrt(np.sum(wedge * wedge, axis=1))
    nz = z > 0
    safe = np.where(nz, z, 1.0)
    w = np.where(nz, np.clip(inner / safe, -1.0, 1.0), 0.0)
    unit_wedge = np.where(nz[:, None], wedge / safe[:, None], 0.0)
    return PairGeometry(x, y, r, s, z, inner, w, t, wedge, unit_wedge)


def bessel_e_table(nu0: float, kmax: int, z) -> np.ndarray:
    """Rows ``E_k = Gamma(nu0+1) (z/2)^(-nu0) J_{nu0+k}(z)`` for ``k = 0..kmax``.

    Entire in ``z`` (integer steps), so negative or complex arguments are fine.
    """
    z = np.asarray(z)
    lad = jhat_ladder(nu0, kmax, z)
    half = z / 2.0
    fac = np.ones_like(lad[0])
    out = np.empty_like(lad)
    out[0] = lad[0]
    for k in range(1, kmax + 1):
        fac = fac * half / (nu0 + k)
        out[k] = fac * lad[k]
    return out


def series_converged(terms: Sequence[np.ndarray], tol: float) -> bool:
    """Last ``TAIL`` terms small against the partial sum of every series."""
    for arr in terms:
        if arr.shape[0] <= TAIL:
            return False
        mag = np.abs(arr)
        total = np.abs(arr.sum(axis=0))
        ref = np.maximum(total, 1e-6 * mag.max(axis=0))
        if np.any(mag[-TAIL:] > tol * ref[None, ...]):
            return False
    return True


def adaptive_sum(
    build: Callable[[int], Sequence[np.ndarray]],
    threshold: float,
    tol: float,
    max_terms: int = MAX_TERMS,
) -> list[np.ndarray]:
    """Sum term tables ``build(kmax)`` (leading axis ``k``) until converged.

    Terms are only trusted once ``kmax`` exceeds ``threshold``, the index past
    which Bessel orders dominate their argument.
    """
    kmax = int(min(max_terms, max(12, math.ceil(threshold) + 12)))
    while True:
        terms = build(kmax)
        if kmax > threshold and series_converged(terms, tol):
            return [t.sum(axis=0) for t in terms]
        if kmax >= max_terms:
            raise SeriesNonConvergence(f"kernel series did not reach tolerance {tol:g} within {max_terms} terms")
        kmax = min(max_terms, 2 * kmax)


def jstar(alpha: float, t) -> np.ndarray:
    """``t^(-alpha) J_alpha(t)`` for half-integer ``alpha``, with a series near 0."""
    from ..specfun import bessel_jtilde

    t = np.asarray(t, dtype=float)
    return 2.0 ** (-alpha) * bessel_jtilde(alpha, t)


def sinc(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < T_SMALL
    safe = np.where(small, 1.0, t)
    return np.where(small, 1.0 - t * t / 6.0, np.sin(safe) / safe)


def assemble(geo: PairGeometry, scalar, bivector_scaled) -> np.ndarray:
    """``scalar + (xi ^ eta) * bivector_scaled`` as ``(N, 2^m)`` complex arrays."""
    out = np.asarray(bivector_scaled, dtype=complex)[:, None] * geo.unit_wedge
    out[:, 0] += scalar
    return out


def scalar_array(geo: PairGeometry, values) -> np.ndarray:
    out = np.zeros((geo.n, 1 << geo.m), dtype=complex)
    out[:, 0] = values
    return out
