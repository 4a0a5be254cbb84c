"""Geometric Fourier transform kernels: products of exponentials of square roots of -1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..multivector import Multivector, blade_exp, vec_inner_wedge

__all__ = [
    "GFTPreset",
    "gft_kernel",
    "sommen_preset",
    "quaternionic_preset",
    "ebling_scheuermann_preset",
    "cylindrical_preset",
]

Map = Callable[[np.ndarray, np.ndarray], Multivector]


@dataclass(frozen=True)
class GFTPreset:
    left: tuple
    right: tuple
    dim: int
    signature: tuple | None = None
    normalization: float = 1.0

    def kernel(self, x, y):
        return gft_kernel(self.left, self.right, x, y, self.dim, self.signature)


def _product(maps: Sequence[Map], x, y, dim: int, signature) -> Multivector:
    out = Multivector.scalar(dim, 1.0, signature)
    for fn in maps:
        out = out * blade_exp(fn(x, y))
    return out


def gft_kernel(f1: Sequence[Map], f2: Sequence[Map], x, y, dim: int | None = None, signature=None):
    """Return ``(prod_{F1} exp(i_j(x,y)), prod_{F2} exp(i_j(x,y)))``.

    The transform is ``int left(x,y) f(x) right(x,y) dx``.  Raises
    ``NotNegativeSquareError`` when a map value does not square to a
    non-positive real.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dim = len(x) if dim is None else dim
    return _product(f1, x, y, dim, signature), _product(f2, x, y, dim, signature)


def sommen_preset(m: int):
    """Right factors ``exp(e_1 x_1 y_1) ... exp(e_m x_m y_m)`` in Cl(0, m)."""

    def make(i):
        return lambda x, y: Multivector.blade(m, 1 << i, float(x[i] * y[i]))

    return GFTPreset((), tuple(make(i) for i in range(m)), m)


def quaternionic_preset(mu: Multivector | None = None, nu: Multivector | None = None):
    """``exp(-mu x1 y1) f exp(-nu x2 y2)`` in Cl(0, 2) = H; defaults ``mu = e1``, ``nu = e2``."""
    mu = Multivector.basis_vector(2, 1) if mu is None else mu
    nu = Multivector.basis_vector(2, 2) if nu is None else nu
    left = (lambda x, y: mu * float(-x[0] * y[0]),)
    right = (lambda x, y: nu * float(-x[1] * y[1]),)
    return GFTPreset(left, right, 2, None, 1.0 / (2 * np.pi))


def ebling_scheuermann_preset(m: int):
    """Right factor ``exp(e_{1..m} <x, y>)`` in Cl(m, 0); needs ``m = 2, 3 mod 4``."""
    if m % 4 not in (2, 3):
        raise ValueError("the pseudoscalar squares to -1 only for m = 2, 3 mod 4")
    sig = (1,) * m
    top = (1 << m) - 1
    return GFTPreset((), (lambda x, y: Multivector.blade(m, top, float(np.dot(x, y)), sig),), m, sig)


def cylindrical_preset(m: int):
    """Left factor ``exp(x ^ y)`` in Cl(0, m)."""

    def wedge(x, y):
        _, w = vec_inner_wedge([float(v) for v in x], [float(v) for v in y])
        return w if w.coeffs else Multivector(m, {})

    return GFTPreset((wedge,), (), m)
