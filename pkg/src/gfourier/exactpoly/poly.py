"""Exact quasi-polynomials: finite sums of ``coeff * r**s * x**alpha * e_A``.

An optional global factor ``exp(-r**2/2)`` is carried as a flag.  Because
``r**2 = sum x_i**2`` the raw term list is not unique; :meth:`canonical`
produces a normal form (per blade and per class of ``s`` modulo 2, the
smallest radial exponent is kept and the polynomial cofactor is made
indivisible by ``|x|**2``), and equality is decided on that form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import numpy as np

from ..multivector import Multivector, blade_name, blade_product

__all__ = ["QuasiPolynomial", "GaussianMismatchError", "poly_mul", "poly_add_into"]

Alpha = tuple[int, ...]
Key = tuple[Fraction, Alpha, int]
Poly = dict[Alpha, object]


class GaussianMismatchError(ValueError):
    pass


class _Exponent(Fraction):
    """Interned non-integral exponent; ``Fraction.__hash__`` is too slow for hot dict keys."""

    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash


_EXPONENTS: dict = {}


def _frac(s):
    """Radial exponent normal form: ``int`` when integral, else an interned ``Fraction``."""
    if type(s) is int or type(s) is _Exponent:
        return s
    f = s if isinstance(s, Fraction) else Fraction(s)
    if f.denominator == 1:
        return f.numerator
    key = (f.numerator, f.denominator)
    out = _EXPONENTS.get(key)
    if out is None:
        out = _Exponent(*key)
        out._hash = Fraction.__hash__(out)
        _EXPONENTS[key] = out
    return out


def poly_add_into(target: Poly, alpha: Alpha, c) -> None:
    if alpha in target:
        v = target[alpha] + c
        if v:
            target[alpha] = v
        else:
            del target[alpha]
    elif c:
        target[alpha] = c


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, ca in p.items():
        for b, cb in q.items():
            poly_add_into(out, tuple(x + y for x, y in zip(a, b)), ca * cb)
    return out


@lru_cache(maxsize=None)
def _rsq_power(dim: int, n: int) -> tuple[tuple[Alpha, int], ...]:
    """Expansion of ``(x_1^2 + ... + x_m^2)^n`` with integer coefficients."""
    base: Poly = {}
    for i in range(dim):
        a = [0] * dim
        a[i] = 2
        base[tuple(a)] = 1
    out: Poly = {(0,) * dim: 1}
    for _ in range(n):
        out = poly_mul(out, base)
    return tuple(out.items())


def _divide_by_rsq(p: Poly, dim: int) -> Poly | None:
    """Exact quotient ``p / |x|^2`` or ``None`` if it does not divide."""
    rem = dict(p)
    quot: Poly = {}
    while True:
        lead = [a for a in rem if a[0] >= 2]
        if not lead:
            break
        a = max(lead, key=lambda t: t[0])
        c = rem[a]
        q = (a[0] - 2,) + a[1:]
        poly_add_into(quot, q, c)
        for i in range(dim):
            b = list(q)
            b[i] += 2
            poly_add_into(rem, tuple(b), -c)
    return quot if not rem else None


class QuasiPolynomial:
    """Immutable exact quasi-polynomial in ``dim`` variables with Clifford-valued coefficients."""

    __slots__ = ("dim", "gaussian", "terms", "_canon")

    def __init__(self, dim: int, terms: Mapping[Key, object] | None = None, gaussian: bool = False):
        self.dim = dim
        self.gaussian = bool(gaussian)
        clean: dict[Key, object] = {}
        for (s, alpha, blade), c in (terms or {}).items():
            if len(alpha) != dim:
                raise ValueError("multi-index length does not match the dimension")
            if c:
                key = (_frac(s), tuple(alpha), blade)
                if key in clean:
                    v = clean[key] + c
                    if v:
                        clean[key] = v
                    else:
                        del clean[key]
                else:
                    clean[key] = c
        self.terms = clean
        self._canon = None

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, dim: int, gaussian: bool = False) -> "QuasiPolynomial":
        return cls(dim, {}, gaussian)

    @classmethod
    def constant(cls, dim: int, c=1, blade: int = 0, gaussian: bool = False) -> "QuasiPolynomial":
        return cls(dim, {(Fraction(0), (0,) * dim, blade): c}, gaussian)

    @classmethod
    def monomial(
        cls, dim: int, alpha: Iterable[int], s=0, blade: int = 0, coeff=1, gaussian: bool = False
    ) -> "QuasiPolynomial":
        return cls(dim, {(_frac(s), tuple(alpha), blade): coeff}, gaussian)

    @classmethod
    def variable(cls, dim: int, i: int) -> "QuasiPolynomial":
        """The coordinate function ``x_i`` (1-based)."""
        a = [0] * dim
        a[i - 1] = 1
        return cls.monomial(dim, a)

    @classmethod
    def x_vector(cls, dim: int) -> "QuasiPolynomial":
        """The vector variable ``sum_i x_i e_i``."""
        terms = {}
        for i in range(dim):
            a = [0] * dim
            a[i] = 1
            terms[(Fraction(0), tuple(a), 1 << i)] = 1
        return cls(dim, terms)

    @classmethod
    def r_power(cls, dim: int, q) -> "QuasiPolynomial":
        return cls.monomial(dim, (0,) * dim, s=q)

    @classmethod
    def gaussian_one(cls, dim: int) -> "QuasiPolynomial":
        return cls.constant(dim, 1, gaussian=True)

    def with_terms(self, terms: Mapping[Key, object], gaussian: bool | None = None) -> "QuasiPolynomial":
        return QuasiPolynomial(self.dim, terms, self.gaussian if gaussian is None else gaussian)

    # ---------------------------------------------------------- arithmetic
    def _check(self, other: "QuasiPolynomial") -> None:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def _merge_flag(self, other: "QuasiPolynomial") -> bool:
        if self.gaussian == other.gaussian:
            return self.gaussian
        if not self.terms:
            return other.gaussian
        if not other.terms:
            return self.gaussian
        raise GaussianMismatchError("cannot add terms with and without the Gaussian factor")

    def __add__(self, other):
        if not isinstance(other, QuasiPolynomial):
            other = QuasiPolynomial.constant(self.dim, other, gaussian=self.gaussian)
        self._check(other)
        flag = self._merge_flag(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                w = out[k] + v
                if w:
                    out[k] = w
                else:
                    del out[k]
            else:
                out[k] = v
        return QuasiPolynomial(self.dim, out, flag)

    __radd__ = __add__

    def __neg__(self):
        return self.with_terms({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QuasiPolynomial):
            other = QuasiPolynomial.constant(self.dim, other, gaussian=self.gaussian)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return self.with_terms({k: v * other for k, v in self.terms.items()})
        self._check(other)
        if self.gaussian and other.gaussian:
            raise GaussianMismatchError("product of two Gaussian-flagged functions leaves the class")
        out: dict[Key, object] = {}
        for (s1, a1, b1), c1 in self.terms.items():
            for (s2, a2, b2), c2 in other.terms.items():
                sign, blade = blade_product(b1, b2)
                key = (s1 + s2, tuple(x + y for x, y in zip(a1, a2)), blade)
                val = c1 * c2 if sign > 0 else -(c1 * c2)
                if key in out:
                    out[key] = out[key] + val
                else:
                    out[key] = val
        return QuasiPolynomial(self.dim, out, self.gaussian or other.gaussian)

    def __rmul__(self, other):
        return self.with_terms({k: other * v for k, v in self.terms.items()})

    def left_blade(self, blade: int, coeff=1) -> "QuasiPolynomial":
        """Left multiplication by ``coeff * e_blade``."""
        out = {}
        for (s, a, b), c in self.terms.items():
            sign, nb = blade_product(blade, b)
            out[(s, a, nb)] = c * coeff if sign > 0 else -(c * coeff)
        return self.with_terms(out)

    def right_blade(self, blade: int, coeff=1) -> "QuasiPolynomial":
        out = {}
        for (s, a, b), c in self.terms.items():
            sign, nb = blade_product(b, blade)
            out[(s, a, nb)] = c * coeff if sign > 0 else -(c * coeff)
        return self.with_terms(out)

    def left_multivector(self, mv: Multivector) -> "QuasiPolynomial":
        out = QuasiPolynomial.zero(self.dim, self.gaussian)
        for blade, c in mv.coeffs.items():
            out = out + self.left_blade(blade, c)
        return out

    def map_coeffs(self, fn: Callable) -> "QuasiPolynomial":
        return self.with_terms({k: fn(v) for k, v in self.terms.items()})

    def bar(self) -> "QuasiPolynomial":
        """Clifford conjugation applied to the coefficients."""
        def sign(b):
            k = bin(b).count("1")
            return -1 if (k + k * (k - 1) // 2) & 1 else 1

        return self.with_terms({(s, a, b): (c if sign(b) > 0 else -c) for (s, a, b), c in self.terms.items()})

    # ------------------------------------------------------- normal form
    def canonical(self) -> "QuasiPolynomial":
        if self._canon is not None:
            return self._canon
        groups: dict[tuple[int, Fraction], list[tuple[Fraction, Alpha, object]]] = {}
        for (s, a, b), c in self.terms.items():
            residue = s - 2 * (s // 2)
            groups.setdefault((b, residue), []).append((s, a, c))
        out: dict[Key, object] = {}
        dim = self.dim
        for (b, _res), items in groups.items():
            smin = min(s for s, _, _ in items)
            poly: Poly = {}
            for s, a, c in items:
                n = int((s - smin) / 2)
                if n == 0:
                    poly_add_into(poly, a, c)
                else:
                    for e, k in _rsq_power(dim, n):
                        poly_add_into(poly, tuple(x + y for x, y in zip(a, e)), c * k)
            if not poly:
                continue
            shift = smin
            while True:
                q = _divide_by_rsq(poly, dim)
                if q is None:
                    break
                poly = q
                shift += 2
            for a, c in poly.items():
                out[(shift, a, b)] = c
        canon = QuasiPolynomial(dim, out, self.gaussian if out else False)
        canon._canon = canon
        self._canon = canon
        return canon

    def is_zero(self) -> bool:
        return not self.canonical().terms

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            other = QuasiPolynomial.constant(self.dim, other, gaussian=self.gaussian)
        if other.dim != self.dim:
            return False
        a, b = self.canonical(), other.canonical()
        if not a.terms and not b.terms:
            return True
        return a.gaussian == b.gaussian and a.terms == b.terms

    __hash__ = None

    # ----------------------------------------------------------- inspection
    def degree(self) -> int:
        return max((sum(a) for _, a, _ in self.terms), default=0)

    def blades(self) -> set[int]:
        return {b for _, _, b in self.terms}

    def is_polynomial(self) -> bool:
        c = self.canonical()
        return not c.gaussian and all(s == 0 for s, _, _ in c.terms)

    def scalar_part(self) -> "QuasiPolynomial":
        return self.with_terms({k: v for k, v in self.terms.items() if k[2] == 0})

    # ------------------------------------------------------ numeric output
    def compile(self) -> Callable[[np.ndarray], np.ndarray]:
        """Return ``f(points) -> array (N, 2**dim)`` of complex values."""
        keys = list(self.terms.items())
        dim = self.dim
        size = 1 << dim
        svals = np.array([float(s) for (s, _, _), _ in keys]) if keys else np.zeros(0)
        alphas = np.array([a for (_, a, _), _ in keys], dtype=int).reshape(len(keys), dim)
        blades = np.array([b for (_, _, b), _ in keys], dtype=int)
        coeffs = np.array([complex(c) for _, c in keys], dtype=complex)
        gaussian = self.gaussian

        def evaluate(points: np.ndarray) -> np.ndarray:
            pts = np.atleast_2d(np.asarray(points, dtype=float))
            out = np.zeros((pts.shape[0], size), dtype=complex)
            if not keys:
                return out
            r2 = np.sum(pts * pts, axis=1)
            r = np.sqrt(r2)
            with np.errstate(divide="ignore", invalid="ignore"):
                logr = np.log(r)
            for idx in range(len(keys)):
                val = np.full(pts.shape[0], coeffs[idx])
                s = svals[idx]
                if s != 0:
                    with np.errstate(divide="ignore", invalid="ignore"):
                        rs = np.where(r > 0, np.exp(s * logr), 0.0 if s > 0 else np.inf)
                    val = val * rs
                for i in range(dim):
                    p = alphas[idx, i]
                    if p:
                        val = val * pts[:, i] ** p
                out[:, blades[idx]] += val
            if gaussian:
                out *= np.exp(-r2 / 2.0)[:, None]
            return out

        return evaluate

    def __call__(self, points) -> np.ndarray:
        return self.compile()(points)

    # ------------------------------------------------------------ display
    def to_records(self) -> list[dict]:
        recs = []
        for (s, a, b), c in sorted(self.canonical().terms.items(), key=lambda kv: (kv[0][2], kv[0][1], kv[0][0])):
            recs.append({"r_power": str(s), "exponents": list(a), "blade": blade_name(b), "coeff": str(c)})
        return recs

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (s, a, b), c in self.terms.items():
            mono = "*".join(f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}" for i, p in enumerate(a) if p)
            pieces = [f"({c})"]
            if s:
                pieces.append(f"r^({s})")
            if mono:
                pieces.append(mono)
            if b:
                pieces.append(blade_name(b))
            parts.append("*".join(pieces))
        body = " + ".join(parts)
        return f"[{body}]*exp(-r^2/2)" if self.gaussian else body
