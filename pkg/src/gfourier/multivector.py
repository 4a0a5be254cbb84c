"""Clifford algebra with generators squaring to -1 (optionally +1).

Blades are bitmasks: bit ``i-1`` set means ``e_i`` is a factor, in increasing
index order.  Coefficients are whatever scalar type the caller supplies:
``Fraction``/``GaussianRational`` give exact arithmetic, ``float``/``complex``
give the fast backend.  A vectorised product over arrays of coefficients is
provided by :class:`ProductTable` for use on quadrature grids.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Multivector",
    "ProductTable",
    "blade_grade",
    "blade_name",
    "blade_product",
    "blade_exp",
    "reflect",
    "vec_inner_wedge",
    "NotVectorError",
    "NotNegativeSquareError",
    "DimensionMismatchError",
]


class DimensionMismatchError(ValueError):
    pass


class NotVectorError(ValueError):
    pass


class NotNegativeSquareError(ValueError):
    pass


def blade_grade(mask: int) -> int:
    return bin(mask).count("1")


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def _reorder_sign(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _blade_product_cached(a: int, b: int, signature: tuple[int, ...] | None) -> tuple[int, int]:
    sign = _reorder_sign(a, b)
    common = a & b
    if signature is None:
        if blade_grade(common) & 1:
            sign = -sign
    else:
        i = 0
        while common:
            if common & 1:
                sign *= signature[i]
            common >>= 1
            i += 1
    return sign, a ^ b


def blade_product(a: int, b: int, signature: tuple[int, ...] | None = None) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e_a * e_b = sign * e_mask``."""
    return _blade_product_cached(a, b, signature)


def _bar_sign(mask: int) -> int:
    k = blade_grade(mask)
    # conjugation: reversion composed with the main involution
    return -1 if (k + k * (k - 1) // 2) & 1 else 1


def _rev_sign(mask: int) -> int:
    k = blade_grade(mask)
    return -1 if (k * (k - 1) // 2) & 1 else 1


class Multivector:
    """Element of Cl(0, m) (or a mixed signature) with sparse coefficients."""

    __slots__ = ("dim", "coeffs", "signature")

    def __init__(
        self,
        dim: int,
        coeffs: Mapping[int, object] | None = None,
        signature: Sequence[int] | None = None,
    ):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        if signature is not None:
            signature = tuple(int(s) for s in signature)
            if len(signature) != dim or any(s not in (1, -1) for s in signature):
                raise ValueError("signature must list +1/-1 for every generator")
            if all(s == -1 for s in signature):
                signature = None
        self.signature = signature
        top = 1 << dim
        clean: dict[int, object] = {}
        for mask, c in (coeffs or {}).items():
            if not 0 <= mask < top:
                raise DimensionMismatchError(f"blade {mask} outside Cl of dimension {dim}")
            if c:
                clean[mask] = c
        self.coeffs = clean

    # construction -------------------------------------------------------
    @classmethod
    def scalar(cls, dim: int, value, signature=None) -> "Multivector":
        return cls(dim, {0: value}, signature)

    @classmethod
    def vector(cls, components: Sequence, signature=None) -> "Multivector":
        return cls(len(components), {1 << i: c for i, c in enumerate(components)}, signature)

    @classmethod
    def blade(cls, dim: int, mask: int, value=1, signature=None) -> "Multivector":
        return cls(dim, {mask: value}, signature)

    @classmethod
    def basis_vector(cls, dim: int, i: int, signature=None) -> "Multivector":
        """``e_i`` with 1-based ``i``."""
        return cls(dim, {1 << (i - 1): 1}, signature)

    # helpers --------------------------------------------------------------
    def _check(self, other: "Multivector") -> None:
        if other.dim != self.dim or other.signature != self.signature:
            raise DimensionMismatchError("multivectors live in different algebras")

    def _new(self, coeffs) -> "Multivector":
        return Multivector(self.dim, coeffs, self.signature)

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return self._new({0: other})

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Multivector):
            return self._new({k: v * other for k, v in self.coeffs.items()})
        self._check(other)
        out: dict[int, object] = {}
        sig = self.signature
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                s, m = _blade_product_cached(a, b, sig)
                term = ca * cb if s > 0 else -(ca * cb)
                out[m] = out[m] + term if m in out else term
        return self._new(out)

    def __rmul__(self, other):
        return self._new({k: other * v for k, v in self.coeffs.items()})

    def __truediv__(self, scalar):
        return self._new({k: v / scalar for k, v in self.coeffs.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("only non-negative integer powers")
        out = self._new({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Multivector):
            if other.dim != self.dim or other.signature != self.signature:
                return False
            keys = set(self.coeffs) | set(other.coeffs)
            return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)
        return self == self._new({0: other})

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def approx_equal(self, other, tol: float = 1e-12) -> bool:
        o = self._coerce(other)
        keys = set(self.coeffs) | set(o.coeffs)
        return all(abs(complex(self.coeffs.get(k, 0)) - complex(o.coeffs.get(k, 0))) <= tol for k in keys)

    def norm(self) -> float:
        return math.sqrt(sum(abs(complex(v)) ** 2 for v in self.coeffs.values()))

    # projections and involutions ---------------------------------------
    def __getitem__(self, mask: int):
        return self.coeffs.get(mask, 0)

    def grade(self, k: int) -> "Multivector":
        return self._new({m: v for m, v in self.coeffs.items() if blade_grade(m) == k})

    def scalar_part(self):
        return self.coeffs.get(0, 0)

    def grades(self) -> set[int]:
        return {blade_grade(m) for m in self.coeffs}

    def bar(self) -> "Multivector":
        """Conjugation: anti-automorphism sending every generator to its negative."""
        return self._new({m: (v if _bar_sign(m) > 0 else -v) for m, v in self.coeffs.items()})

    def epsilon(self) -> "Multivector":
        """Main involution: sign ``(-1)^k`` on grade ``k``."""
        return self._new({m: (-v if blade_grade(m) & 1 else v) for m, v in self.coeffs.items()})

    def reverse(self) -> "Multivector":
        return self._new({m: (v if _rev_sign(m) > 0 else -v) for m, v in self.coeffs.items()})

    def conj(self) -> "Multivector":
        """Complex conjugation of the coefficients only."""
        return self._new({m: v.conjugate() for m, v in self.coeffs.items()})

    def involution(self, kind: str) -> "Multivector":
        if kind == "bar":
            return self.bar()
        if kind == "epsilon":
            return self.epsilon()
        if kind == "reverse":
            return self.reverse()
        if kind == "complex":
            return self.conj()
        raise ValueError(f"unknown involution {kind!r}")

    def map_coeffs(self, fn) -> "Multivector":
        return self._new({m: fn(v) for m, v in self.coeffs.items()})

    def to_array(self, dtype=complex) -> np.ndarray:
        arr = np.zeros(1 << self.dim, dtype=dtype)
        for m, v in self.coeffs.items():
            arr[m] = complex(v) if dtype is complex else float(v)
        return arr

    @classmethod
    def from_array(cls, arr, dim: int | None = None, tol: float = 0.0, signature=None) -> "Multivector":
        arr = np.asarray(arr)
        if dim is None:
            dim = int(round(math.log2(arr.shape[-1])))
        return cls(dim, {m: complex(v) for m, v in enumerate(arr) if abs(v) > tol}, signature)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"({v})*{blade_name(m)}" if m else f"({v})" for m, v in sorted(self.coeffs.items())]
        return " + ".join(parts)


def _as_components(v) -> list:
    if isinstance(v, Multivector):
        if any(blade_grade(m) != 1 for m in v.coeffs):
            raise NotVectorError("expected a grade-1 multivector")
        return [v.coeffs.get(1 << i, 0) for i in range(v.dim)]
    return list(v)


def vec_inner_wedge(x, y) -> tuple[object, Multivector]:
    """Return ``(<x, y>, x ^ y)`` for two vectors given as grade-1 multivectors or sequences."""
    xs, ys = _as_components(x), _as_components(y)
    if len(xs) != len(ys):
        raise DimensionMismatchError("vectors of different length")
    m = len(xs)
    inner = sum((a * b for a, b in zip(xs, ys)), 0)
    wedge = {}
    for i in range(m):
        for j in range(i + 1, m):
            c = xs[i] * ys[j] - xs[j] * ys[i]
            if c:
                wedge[(1 << i) | (1 << j)] = c
    return inner, Multivector(m, wedge)


def blade_exp(b: Multivector, tol: float = 1e-12) -> Multivector:
    """``exp(B)`` for a multivector whose square is a negative real scalar.

    Returns ``cos(t) + B sin(t)/t`` with ``t = sqrt(-B*B)``; floats throughout.
    """
    sq = b * b
    rest = max((abs(complex(v)) for m, v in sq.coeffs.items() if m != 0), default=0.0)
    s = complex(sq.scalar_part())
    scale = max(1.0, abs(s))
    if rest > tol * scale or abs(s.imag) > tol * scale or s.real > tol * scale:
        raise NotNegativeSquareError("exponent does not square to a non-positive real scalar")
    t = math.sqrt(max(-s.real, 0.0))
    sinc = math.sin(t) / t if t > 1e-8 else 1.0 - t * t / 6.0
    out = b.map_coeffs(lambda v: v * sinc)
    return out + math.cos(t)


def reflect(alpha, x) -> Multivector:
    """Reflection of ``x`` in the hyperplane orthogonal to ``alpha`` via ``alpha x alpha / 2``.

    ``alpha`` must satisfy ``<alpha, alpha> = 2``.
    """
    a_comp = _as_components(alpha)
    x_comp = _as_components(x)
    norm = sum(c * c for c in a_comp)
    if norm != 2 and not (isinstance(norm, float) and abs(norm - 2) < 1e-12):
        raise ValueError("root must have squared length 2")
    a_mv = Multivector.vector(a_comp)
    x_mv = Multivector.vector(x_comp)
    prod = a_mv * x_mv * a_mv
    return prod.map_coeffs(lambda v: Fraction(v, 2) if isinstance(v, int) else v / 2)


class ProductTable:
    """Vectorised Clifford product for coefficient arrays of shape ``(..., 2**m)``.

    ``left_blades``/``right_blades`` restrict the loops to the blades that are
    actually populated, which keeps kernel-times-function products cheap.
    """

    def __init__(self, dim: int, signature: Sequence[int] | None = None):
        self.dim = dim
        self.size = 1 << dim
        sig = None if signature is None else tuple(signature)
        if sig is not None and all(s == -1 for s in sig):
            sig = None
        self.signature = sig
        sign = np.empty((self.size, self.size))
        idx = np.empty((self.size, self.size), dtype=int)
        for a in range(self.size):
            for b in range(self.size):
                s, m = blade_product(a, b, sig)
                sign[a, b] = s
                idx[a, b] = m
        self.sign = sign
        self.index = idx

    def mul(
        self,
        a: np.ndarray,
        b: np.ndarray,
        left_blades: Iterable[int] | None = None,
        right_blades: Iterable[int] | None = None,
    ) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        out = np.zeros(shape + (self.size,), dtype=np.result_type(a, b, float))
        la = range(self.size) if left_blades is None else left_blades
        rb = np.arange(self.size) if right_blades is None else np.asarray(list(right_blades), dtype=int)
        b_sub = b[..., rb]
        for i in la:
            # e_i e_b as a signed permutation of blades, applied as a small matmul
            out += a[..., i : i + 1] * (b_sub @ self.left_matrix(i)[rb])
        return out

    def left_matrix(self, i: int) -> np.ndarray:
        """``M`` with ``(b @ M)[..., c]`` the coefficients of ``e_i * b``."""
        mats = self.__dict__.setdefault("_left_mats", {})
        if i not in mats:
            mat = np.zeros((self.size, self.size))
            mat[np.arange(self.size), self.index[i]] = self.sign[i]
            mats[i] = mat
        return mats[i]

    def bar(self, a: np.ndarray) -> np.ndarray:
        signs = np.array([_bar_sign(m) for m in range(self.size)], dtype=float)
        return a * signs

    def vector(self, x: np.ndarray) -> np.ndarray:
        """Embed points of shape ``(..., m)`` as grade-1 coefficient arrays."""
        x = np.asarray(x)
        out = np.zeros(x.shape[:-1] + (self.size,), dtype=x.dtype)
        for i in range(self.dim):
            out[..., 1 << i] = x[..., i]
        return out

    def wedge(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bivector ``x ^ y`` as coefficient arrays (broadcast over leading axes)."""
        x = np.asarray(x)
        y = np.asarray(y)
        shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
        out = np.zeros(shape + (self.size,), dtype=np.result_type(x, y, float))
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                out[..., (1 << i) | (1 << j)] = x[..., i] * y[..., j] - x[..., j] * y[..., i]
        return out


def bivector_blades(dim: int) -> list[int]:
    return [(1 << i) | (1 << j) for i in range(dim) for j in range(i + 1, dim)]


def even_low_blades(dim: int) -> list[int]:
    """Scalar plus bivector blades, the support of every Clifford kernel here."""
    return [0] + bivector_blades(dim)
