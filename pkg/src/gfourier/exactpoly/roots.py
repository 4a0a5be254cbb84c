"""Reflection root systems with exact coordinates.

Roots are stored as exact direction vectors.  The Dunkl difference term
``kappa * alpha_i * (f - f o r_alpha) / <alpha, x>`` is invariant under
rescaling of ``alpha``, so the directions need not have squared length 2;
that normalisation only enters the weight function, which is evaluated in
floating point with unit-normalised roots scaled by ``sqrt(2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..fields import QuadraticSurd

__all__ = ["RootSystem", "UnsupportedRootSystem"]


class UnsupportedRootSystem(ValueError):
    pass


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class RootSystem:
    """Positive roots with a multiplicity function constant on reflection orbits."""

    dim: int
    roots: tuple[tuple, ...]
    kappa: tuple[Fraction, ...]
    family: str = "custom"
    # per-root tag: "coord" (sign flip), "swap" (transposition) or "general"
    kinds: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.kappa) != len(self.roots):
            raise ValueError("one multiplicity per positive root is required")
        if any(len(r) != self.dim for r in self.roots):
            raise ValueError("root length does not match the dimension")
        if not self.kinds:
            object.__setattr__(self, "kinds", tuple(self._classify(r) for r in self.roots))

    @staticmethod
    def _classify(root) -> str:
        nz = [i for i, v in enumerate(root) if v]
        if len(nz) == 1:
            return "coord"
        if len(nz) == 2 and root[nz[0]] == -root[nz[1]] and not isinstance(root[nz[0]], QuadraticSurd):
            return "swap"
        return "general"

    # ----------------------------------------------------------- families
    @classmethod
    def trivial(cls, dim: int) -> "RootSystem":
        return cls(dim, (), (), "trivial")

    @classmethod
    def z2m(cls, dim: int, kappa) -> "RootSystem":
        """Coordinate reflections; ``kappa`` is a scalar or one value per axis."""
        ks = [kappa] * dim if not isinstance(kappa, (list, tuple)) else list(kappa)
        if len(ks) != dim:
            raise ValueError("need one multiplicity per coordinate axis")
        roots = []
        for i in range(dim):
            r = [Fraction(0)] * dim
            r[i] = Fraction(1)
            roots.append(tuple(r))
        return cls(dim, tuple(roots), tuple(Fraction(k) for k in ks), "Z2^m")

    @classmethod
    def a_type(cls, dim: int, kappa) -> "RootSystem":
        """Symmetric group acting on ``R^dim`` (roots ``e_i - e_j``), a single orbit."""
        roots = []
        for i in range(dim):
            for j in range(i + 1, dim):
                r = [Fraction(0)] * dim
                r[i], r[j] = Fraction(1), Fraction(-1)
                roots.append(tuple(r))
        return cls(dim, tuple(roots), tuple(Fraction(kappa) for _ in roots), f"A{dim - 1}")

    @classmethod
    def dihedral(cls, k: int, kappa, kappa_other=None) -> "RootSystem":
        """Dihedral group of order ``2k`` in the plane.

        Supported for ``k`` in {1, 2, 3, 4, 6}; these are exactly the cases
        whose mirror directions have coordinates in Q or Q(sqrt(3)).  For even
        ``k`` the two reflection orbits can carry different multiplicities.
        """
        half = Fraction(1, 2)
        s3 = QuadraticSurd(0, 1, 3)
        if k == 1:
            dirs = [(Fraction(1), Fraction(0))]
        elif k == 2:
            dirs = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
        elif k == 3:
            # normals at 90, 30 and -30 degrees
            dirs = [(Fraction(0), Fraction(1)), (s3 * half, half), (s3 * half, -half)]
        elif k == 4:
            dirs = [(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1))]
        elif k == 6:
            dirs = [
                (Fraction(1), Fraction(0)),
                (s3 * half, half),
                (half, s3 * half),
                (Fraction(0), Fraction(1)),
                (-half, s3 * half),
                (-s3 * half, half),
            ]
        else:
            raise UnsupportedRootSystem(f"dihedral group I2({k}) needs irrational coordinates outside Q(sqrt 3)")
        other = kappa if kappa_other is None else kappa_other
        ks = tuple(Fraction(kappa) if (k % 2 == 1 or i % 2 == 0) else Fraction(other) for i in range(len(dirs)))
        return cls(2, tuple(dirs), ks, f"I2({k})")

    # --------------------------------------------------------- invariants
    @property
    def gamma(self) -> Fraction:
        return sum(self.kappa, Fraction(0))

    @property
    def mu(self) -> Fraction:
        return self.dim + 2 * self.gamma

    def norm_sq(self, idx: int):
        r = self.roots[idx]
        return _dot(r, r)

    def reflection_matrix(self, idx: int) -> list[list]:
        """Exact matrix of ``x -> x - 2 <alpha, x> alpha / <alpha, alpha>``."""
        r = self.roots[idx]
        n = self.norm_sq(idx)
        return [[(1 if i == j else 0) - 2 * r[i] * r[j] / n for j in range(self.dim)] for i in range(self.dim)]

    def float_roots(self) -> np.ndarray:
        """Roots normalised to squared length 2, as floats."""
        arr = np.array([[float(v) for v in r] for r in self.roots], dtype=float).reshape(len(self.roots), self.dim)
        if len(arr):
            arr = arr * (math.sqrt(2.0) / np.linalg.norm(arr, axis=1))[:, None]
        return arr

    def weight(self, points) -> np.ndarray:
        """``w_kappa(x) = prod |<alpha, x>|^(2 kappa_alpha)`` with ``<alpha, alpha> = 2``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.ones(pts.shape[0])
        for r, k in zip(self.float_roots(), self.kappa):
            if k:
                out = out * np.abs(pts @ r) ** (2 * float(k))
        return out

    def reflect_point(self, idx: int, x: Sequence) -> tuple:
        mat = self.reflection_matrix(idx)
        return tuple(sum((mat[i][j] * x[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim))

    def is_closed(self) -> bool:
        """Check that every reflection permutes the root lines."""
        lines = [tuple(float(v) for v in r) for r in self.roots]

        def same_line(a, b):
            a, b = np.array(a), np.array(b)
            return abs(abs(a @ b) - np.linalg.norm(a) * np.linalg.norm(b)) < 1e-12

        for i in range(len(self.roots)):
            for r in self.roots:
                img = tuple(float(v) for v in self.reflect_point(i, r))
                if not any(same_line(img, ln) for ln in lines):
                    return False
        return True
