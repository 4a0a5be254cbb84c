"""Operator expressions acting exactly on :class:`QuasiPolynomial`.

Expressions are small trees.  Leaves are concrete generators (partial
derivatives, multiplications, Euler, Dirac, Dunkl operators, ...); internal
nodes are composition (``a @ b`` means "apply ``b`` first"), sums and scalar
multiples.  All operators act on Clifford-valued functions from the left and
are right-linear in the Clifford algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..multivector import Multivector, blade_product
from .poly import Alpha, Key, Poly, QuasiPolynomial, poly_add_into, poly_mul
from .roots import RootSystem

__all__ = [
    "Operator",
    "InexactDivisionError",
    "Identity",
    "PartialD",
    "MultX",
    "MultXVec",
    "MultRPow",
    "LeftMul",
    "Euler",
    "Laplace",
    "Dirac",
    "Gamma",
    "DunklT",
    "DunklLaplace",
    "DunklDirac",
    "DunklGamma",
    "DeformedD",
    "Reflect",
    "Compose",
    "Sum",
    "Scale",
    "commutator",
    "anticommutator",
    "apply",
    "scalar",
]


class InexactDivisionError(ArithmeticError):
    """Raised when a Dunkl difference quotient does not divide exactly."""


# ------------------------------------------------------------- primitives


def _unit(dim: int, i: int) -> Alpha:
    a = [0] * dim
    a[i] = 1
    return tuple(a)


def _add(out: dict, key: Key, c) -> None:
    if key in out:
        v = out[key] + c
        if v:
            out[key] = v
        else:
            del out[key]
    elif c:
        out[key] = c


def partial(f: QuasiPolynomial, i: int) -> QuasiPolynomial:
    """``d/dx_i`` with 0-based ``i``."""
    out: dict = {}
    g = f.gaussian
    for (s, a, b), c in f.terms.items():
        a_up = a[:i] + (a[i] + 1,) + a[i + 1 :]
        if s:
            _add(out, (s - 2, a_up, b), c * s)
        if a[i]:
            _add(out, (s, a[:i] + (a[i] - 1,) + a[i + 1 :], b), c * a[i])
        if g:
            _add(out, (s, a_up, b), -c)
    return f.with_terms(out)


def mul_x(f: QuasiPolynomial, i: int) -> QuasiPolynomial:
    out = {}
    for (s, a, b), c in f.terms.items():
        out[(s, a[:i] + (a[i] + 1,) + a[i + 1 :], b)] = c
    return f.with_terms(out)


def mul_rpow(f: QuasiPolynomial, q) -> QuasiPolynomial:
    q = Fraction(q)
    return f.with_terms({(s + q, a, b): c for (s, a, b), c in f.terms.items()})


def left_e(f: QuasiPolynomial, blade: int) -> QuasiPolynomial:
    out = {}
    for (s, a, b), c in f.terms.items():
        sign, nb = blade_product(blade, b)
        out[(s, a, nb)] = c if sign > 0 else -c
    return f.with_terms(out)


def mul_xvec(f: QuasiPolynomial) -> QuasiPolynomial:
    out: dict = {}
    dim = f.dim
    for (s, a, b), c in f.terms.items():
        for i in range(dim):
            sign, nb = blade_product(1 << i, b)
            _add(out, (s, a[:i] + (a[i] + 1,) + a[i + 1 :], nb), c if sign > 0 else -c)
    return f.with_terms(out)


def euler(f: QuasiPolynomial) -> QuasiPolynomial:
    out: dict = {}
    for (s, a, b), c in f.terms.items():
        _add(out, (s, a, b), c * (s + sum(a)))
        if f.gaussian:
            _add(out, (s + 2, a, b), -c)
    return f.with_terms(out)


def dirac(f: QuasiPolynomial) -> QuasiPolynomial:
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    for i in range(f.dim):
        out = out + left_e(partial(f, i), 1 << i)
    return out


def laplace(f: QuasiPolynomial) -> QuasiPolynomial:
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    for i in range(f.dim):
        out = out + partial(partial(f, i), i)
    return out


def gamma_op(f: QuasiPolynomial) -> QuasiPolynomial:
    """``-sum_{j<k} e_j e_k (x_j d_k - x_k d_j)``."""
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    for j in range(f.dim):
        for k in range(j + 1, f.dim):
            ang = mul_x(partial(f, k), j) - mul_x(partial(f, j), k)
            out = out - left_e(ang, (1 << j) | (1 << k))
    return out


# ---------------------------------------------------------------- Dunkl


def _group_by_radial(f: QuasiPolynomial) -> dict[tuple[Fraction, int], Poly]:
    groups: dict[tuple[Fraction, int], Poly] = {}
    for (s, a, b), c in f.terms.items():
        groups.setdefault((s, b), {})[a] = c
    return groups


def _linear_image_power(root_sys: RootSystem, idx: int, var: int, p: int, cache: dict) -> Poly:
    key = (idx, var, p)
    if key in cache:
        return cache[key]
    dim = root_sys.dim
    if p == 0:
        res = {(0,) * dim: 1}
    else:
        mat = root_sys.reflection_matrix(idx)
        lin = {_unit(dim, j): mat[var][j] for j in range(dim) if mat[var][j]}
        res = poly_mul(_linear_image_power(root_sys, idx, var, p - 1, cache), lin)
    cache[key] = res
    return res


_REFLECT_CACHE: dict = {}


def reflect_poly(p: Poly, root_sys: RootSystem, idx: int) -> Poly:
    """``P(r_alpha x)`` for the root with index ``idx``."""
    kind = root_sys.kinds[idx]
    root = root_sys.roots[idx]
    if kind == "coord":
        j = next(i for i, v in enumerate(root) if v)
        return {a: (-c if a[j] & 1 else c) for a, c in p.items()}
    if kind == "swap":
        i, j = [k for k, v in enumerate(root) if v]
        out = {}
        for a, c in p.items():
            b = list(a)
            b[i], b[j] = b[j], b[i]
            out[tuple(b)] = c
        return out
    cache = _REFLECT_CACHE.setdefault(id(root_sys), {})
    out: Poly = {}
    for a, c in p.items():
        img: Poly = {(0,) * root_sys.dim: c}
        for var, power in enumerate(a):
            if power:
                img = poly_mul(img, _linear_image_power(root_sys, idx, var, power, cache))
        for e, v in img.items():
            poly_add_into(out, e, v)
    return out


def _divide_linear(p: Poly, lin: Sequence) -> Poly:
    piv = next(i for i, v in enumerate(lin) if v)
    rem = dict(p)
    quot: Poly = {}
    while True:
        cand = [a for a in rem if a[piv] >= 1]
        if not cand:
            break
        a = max(cand, key=lambda t: t[piv])
        c = rem[a] / lin[piv]
        q = a[:piv] + (a[piv] - 1,) + a[piv + 1 :]
        poly_add_into(quot, q, c)
        for j, v in enumerate(lin):
            if v:
                poly_add_into(rem, q[:j] + (q[j] + 1,) + q[j + 1 :], -(c * v))
    if rem:
        raise InexactDivisionError("difference quotient is not a polynomial")
    return quot


def difference_quotient(f: QuasiPolynomial, root_sys: RootSystem, idx: int) -> QuasiPolynomial:
    """``(f - f o r_alpha) / <alpha, x>``; radial and Gaussian factors are invariant."""
    out: dict = {}
    root = root_sys.roots[idx]
    kind = root_sys.kinds[idx]
    for (s, b), poly in _group_by_radial(f).items():
        if kind == "coord":
            j = next(i for i, v in enumerate(root) if v)
            scale = root[j]
            quot = {a[:j] + (a[j] - 1,) + a[j + 1 :]: 2 * c / scale for a, c in poly.items() if a[j] & 1}
        else:
            refl = reflect_poly(poly, root_sys, idx)
            diff = dict(poly)
            for a, c in refl.items():
                poly_add_into(diff, a, -c)
            quot = _divide_linear(diff, root) if diff else {}
        for a, c in quot.items():
            _add(out, (s, a, b), c)
    return f.with_terms(out)


def _dunkl_parts(f: QuasiPolynomial, root_sys: RootSystem) -> list[tuple[Sequence, object, QuasiPolynomial]]:
    return [
        (root_sys.roots[k], root_sys.kappa[k], difference_quotient(f, root_sys, k))
        for k in range(len(root_sys.roots))
        if root_sys.kappa[k]
    ]


def dunkl_t(f: QuasiPolynomial, root_sys: RootSystem, i: int, parts=None) -> QuasiPolynomial:
    out = partial(f, i)
    for root, kap, quot in parts if parts is not None else _dunkl_parts(f, root_sys):
        if root[i]:
            out = out + quot * (kap * root[i])
    return out


def dunkl_dirac(f: QuasiPolynomial, root_sys: RootSystem) -> QuasiPolynomial:
    parts = _dunkl_parts(f, root_sys)
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    for i in range(f.dim):
        out = out + left_e(dunkl_t(f, root_sys, i, parts), 1 << i)
    return out


def dunkl_laplace(f: QuasiPolynomial, root_sys: RootSystem) -> QuasiPolynomial:
    out = QuasiPolynomial.zero(f.dim, f.gaussian)
    parts = _dunkl_parts(f, root_sys)
    for i in range(f.dim):
        out = out + dunkl_t(dunkl_t(f, root_sys, i, parts), root_sys, i)
    return out


def reflect_function(f: QuasiPolynomial, root_sys: RootSystem, idx: int) -> QuasiPolynomial:
    out: dict = {}
    for (s, b), poly in _group_by_radial(f).items():
        for a, c in reflect_poly(poly, root_sys, idx).items():
            _add(out, (s, a, b), c)
    return f.with_terms(out)


# ------------------------------------------------------------ expressions


class Operator:
    """Base class for operator expressions."""

    def apply(self, f: QuasiPolynomial) -> QuasiPolynomial:  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, f: QuasiPolynomial) -> QuasiPolynomial:
        return self.apply(f)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Compose(self, other)

    def __add__(self, other):
        if not isinstance(other, Operator):
            other = scalar(other)
        return Sum((self, other))

    def __radd__(self, other):
        return scalar(other) + self

    def __sub__(self, other):
        if not isinstance(other, Operator):
            other = scalar(other)
        return Sum((self, Scale(-1, other)))

    def __rsub__(self, other):
        return scalar(other) - self

    def __neg__(self):
        return Scale(-1, self)

    def __mul__(self, c):
        if isinstance(c, Operator):
            return Compose(self, c)
        return Scale(c, self)

    def __rmul__(self, c):
        return Scale(c, self)

    def __pow__(self, n: int) -> "Operator":
        if n < 1:
            return Identity()
        out = self
        for _ in range(n - 1):
            out = Compose(out, self)
        return out


class Identity(Operator):
    def apply(self, f):
        return f

    def __repr__(self):
        return "1"


def scalar(c) -> Operator:
    return Scale(c, Identity())


class Compose(Operator):
    def __init__(self, outer: Operator, inner: Operator):
        self.outer, self.inner = outer, inner

    def apply(self, f):
        return self.outer.apply(self.inner.apply(f))

    def __repr__(self):
        return f"({self.outer!r})({self.inner!r})"


class Sum(Operator):
    def __init__(self, parts: Sequence[Operator]):
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Sum) else [p])
        self.parts = tuple(flat)

    def apply(self, f):
        out = None
        for p in self.parts:
            g = p.apply(f)
            out = g if out is None else out + g
        return out

    def __repr__(self):
        return " + ".join(repr(p) for p in self.parts)


class Scale(Operator):
    def __init__(self, c, op: Operator):
        self.c = Fraction(c) if isinstance(c, int) else c
        self.op = op

    def apply(self, f):
        g = self.op.apply(f)
        return g.map_coeffs(lambda v: v * self.c)

    def __repr__(self):
        return f"{self.c}*{self.op!r}"


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a


def anticommutator(a: Operator, b: Operator) -> Operator:
    return a @ b + b @ a


class PartialD(Operator):
    def __init__(self, i: int):
        self.i = i  # 1-based

    def apply(self, f):
        return partial(f, self.i - 1)

    def __repr__(self):
        return f"d{self.i}"


class MultX(Operator):
    def __init__(self, i: int):
        self.i = i

    def apply(self, f):
        return mul_x(f, self.i - 1)

    def __repr__(self):
        return f"x{self.i}"


class MultXVec(Operator):
    def apply(self, f):
        return mul_xvec(f)

    def __repr__(self):
        return "x_"


class MultRPow(Operator):
    def __init__(self, q):
        self.q = Fraction(q)

    def apply(self, f):
        return mul_rpow(f, self.q)

    def __repr__(self):
        return f"r^{self.q}"


class LeftMul(Operator):
    """Left multiplication by a constant multivector."""

    def __init__(self, mv: Multivector):
        self.mv = mv

    def apply(self, f):
        return f.left_multivector(self.mv)

    def __repr__(self):
        return f"[{self.mv!r}]"


class Euler(Operator):
    def apply(self, f):
        return euler(f)

    def __repr__(self):
        return "E"


class Laplace(Operator):
    def apply(self, f):
        return laplace(f)

    def __repr__(self):
        return "Lap"


class Dirac(Operator):
    def apply(self, f):
        return dirac(f)

    def __repr__(self):
        return "Dirac"


class Gamma(Operator):
    def apply(self, f):
        return gamma_op(f)

    def __repr__(self):
        return "Gamma"


class DunklT(Operator):
    def __init__(self, i: int, roots: RootSystem):
        self.i, self.roots = i, roots

    def apply(self, f):
        return dunkl_t(f, self.roots, self.i - 1)

    def __repr__(self):
        return f"T{self.i}"


class DunklLaplace(Operator):
    def __init__(self, roots: RootSystem):
        self.roots = roots

    def apply(self, f):
        return dunkl_laplace(f, self.roots)

    def __repr__(self):
        return "DunklLap"


class DunklDirac(Operator):
    def __init__(self, roots: RootSystem):
        self.roots = roots

    def apply(self, f):
        return dunkl_dirac(f, self.roots)

    def __repr__(self):
        return "DunklDirac"


class DunklGamma(Operator):
    """``-x_ D_kappa - E``; reduces to :class:`Gamma` when all multiplicities vanish."""

    def __init__(self, roots: RootSystem):
        self.roots = roots

    def apply(self, f):
        return -(mul_xvec(dunkl_dirac(f, self.roots))) - euler(f)

    def __repr__(self):
        return "DunklGamma"


class DeformedD(Operator):
    """``D_kappa + c r^-2 x_ E``, optionally plus ``sum_j c_j r^-1 (Gamma - (mu-1)/2)^(2j+1)``."""

    def __init__(self, c, roots: RootSystem, odd_gamma_coeffs: Sequence = ()):
        c = Fraction(c)
        if c <= -1:
            raise ValueError("deformation parameter must exceed -1")
        self.c = c
        self.roots = roots
        self.odd = tuple(Fraction(v) for v in odd_gamma_coeffs)

    def apply(self, f):
        out = dunkl_dirac(f, self.roots)
        if self.c:
            out = out + mul_rpow(mul_xvec(euler(f)), -2) * self.c
        if self.odd:
            shift = (self.roots.mu - 1) / 2
            gam = DunklGamma(self.roots)
            g = f
            for j, cj in enumerate(self.odd):
                reps = 1 if j == 0 else 2
                for _ in range(reps):
                    g = gam.apply(g) - g * shift
                if cj:
                    out = out + mul_rpow(g, -1) * cj
        return out

    def __repr__(self):
        return f"D[c={self.c}]"


class Reflect(Operator):
    def __init__(self, roots: RootSystem, idx: int):
        self.roots, self.idx = roots, idx

    def apply(self, f):
        return reflect_function(f, self.roots, self.idx)

    def __repr__(self):
        return f"R{self.idx}"


def apply(op: Operator, f: QuasiPolynomial) -> QuasiPolynomial:
    """Apply ``op`` to ``f`` and return the canonical form of the result."""
    return op.apply(f).canonical()
