"""Kernel parameter bundles and their validation."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "FAMILIES",
    "KernelParams",
    "ParameterError",
    "ExcludedParameterError",
    "OpenProblemError",
    "KernelUnavailableError",
]

FAMILIES = (
    "classical",
    "fractional",
    "dunkl_z2m",
    "radial",
    "radial_rank1",
    "cft",
    "cft_fractional",
    "cft_class",
    "deformed_semigroup",
    "gft",
)

_ANGLE_EPS = 1e-12


class ParameterError(ValueError):
    pass


class ExcludedParameterError(ParameterError):
    """Parameter value for which the transform is not an integral operator."""


class OpenProblemError(NotImplementedError):
    """No closed formula is known for the requested kernel."""


class KernelUnavailableError(NotImplementedError):
    pass


def _near_multiple_of_pi(a: float) -> bool:
    q = a / math.pi
    return abs(q - round(q)) < _ANGLE_EPS


@dataclass(frozen=True)
class KernelParams:
    family: str
    m: int
    sign: str = "-"
    a: float = 2.0
    c: float = 0.0
    kappa: tuple = ()
    alpha: float = math.pi / 2
    beta: float = 0.0
    omega: complex = 0.5j * math.pi
    j: int = 0
    tol: float = 1e-14
    mode: str = "series"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown kernel family {self.family!r}")
        if self.m < 1:
            raise ParameterError("dimension must be positive")
        if self.sign not in ("+", "-"):
            raise ParameterError("sign must be '+' or '-'")
        if not 0 < self.tol <= 1e-6:
            raise ParameterError("series tolerance must lie in (0, 1e-6]")
        f = self.family
        if f in ("fractional", "cft_fractional"):
            if not -math.pi - _ANGLE_EPS <= self.alpha <= math.pi + _ANGLE_EPS:
                raise ParameterError("alpha must lie in [-pi, pi]")
            if _near_multiple_of_pi(self.alpha):
                raise ExcludedParameterError(
                    f"alpha = {self.alpha:g} is excluded: at alpha = 0 or +-pi the transform degenerates to a "
                    "singular operator on the sphere or a delta distribution"
                )
        if f == "cft_fractional" and not -math.pi - _ANGLE_EPS <= self.beta <= math.pi + _ANGLE_EPS:
            raise ParameterError("beta must lie in [-pi, pi]")
        if f == "cft_class":
            if self.m % 2:
                raise ParameterError("the transform class is defined for even dimension only")
            if not 0 <= self.j <= self.m - 2:
                raise ParameterError(f"j must lie in 0..{self.m - 2}")
        if f == "radial" and self.a <= 0:
            raise ParameterError("radial deformation parameter a must be positive")
        if f == "radial_rank1":
            if self.a <= 0:
                raise ParameterError("radial deformation parameter a must be positive")
            if 2 * self.kappa_scalar <= 1 - self.a:
                raise ParameterError("rank-one kernel needs 2 kappa > 1 - a")
        if f == "dunkl_z2m":
            ks = self.kappa_vector
            if len(ks) != self.m:
                raise ParameterError("dunkl_z2m needs one multiplicity per coordinate")
            if any(k < -0.5 for k in ks):
                raise ParameterError("multiplicities must be >= -1/2")
        if f == "deformed_semigroup":
            if self.c <= -1:
                raise ParameterError("deformation parameter c must exceed -1")
            om = complex(self.omega)
            if om.real < 0:
                raise ParameterError("semigroup parameter needs Re(omega) >= 0")
            if om.real == 0 and _near_multiple_of_pi(om.imag):
                raise ExcludedParameterError("on the imaginary axis omega = i eta needs eta outside pi Z")

    # ------------------------------------------------------------ derived
    @property
    def lam(self) -> float:
        return (self.m - 2) / 2.0

    @property
    def kappa_vector(self) -> tuple:
        k = self.kappa
        if isinstance(k, (int, float)):
            return (float(k),) * self.m
        if len(k) == 1 and self.m > 1:
            return (float(k[0]),) * self.m
        return tuple(float(v) for v in k)

    @property
    def kappa_scalar(self) -> float:
        k = self.kappa
        if isinstance(k, (int, float)):
            return float(k)
        return float(k[0]) if len(k) else 0.0

    @property
    def mu(self) -> float:
        if self.family == "dunkl_z2m":
            return self.m + 2 * sum(self.kappa_vector)
        if self.family == "radial_rank1":
            return 1 + 2 * self.kappa_scalar
        return float(self.m)

    @property
    def delta(self) -> float:
        return 1 + (self.mu - 1) / (1 + self.c)

    def gamma_k(self, k) -> float:
        return (2 * k + self.mu + self.c) / (1 + self.c)

    def beta_ell(self, ell) -> float:
        return -self.c / (1 + self.c) * ell

    def normalization(self) -> complex:
        """Constant in front of the integral, carried separately from the kernel."""
        f, m = self.family, self.m
        if f in ("classical", "cft", "cft_class"):
            return (2 * math.pi) ** (-m / 2)
        if f in ("fractional", "cft_fractional"):
            return (math.pi * (1 - cmath.exp(-2j * self.alpha))) ** (-m / 2)
        if f == "dunkl_z2m":
            return math.prod(2 ** (-(2 * k + 1) / 2) for k in self.kappa_vector)
        if f == "radial":
            lam, a = self.lam, self.a
            return math.gamma(m / 2) / (math.gamma((2 * lam + a) / a) * 2 * a ** (2 * lam / a) * math.pi ** (m / 2))
        if f == "radial_rank1":
            return 1 / (2 * self.a ** ((2 * self.kappa_scalar - 1) / self.a))
        if f == "deformed_semigroup":
            return math.gamma(m / 2) / (2 * math.pi ** (m / 2))
        if f == "gft":
            return float(self.extra.get("normalization", 1.0))
        raise KernelUnavailableError(f)

    def measure_exponent(self) -> float:
        """Power ``p`` of the radial weight ``|x|^p`` in the transform measure."""
        if self.family == "radial":
            return self.a - 2
        if self.family == "radial_rank1":
            return 2 * self.kappa_scalar + self.a - 2
        if self.family == "deformed_semigroup":
            return 1 - (1 + self.mu * self.c) / (1 + self.c)
        return 0.0

    def measure_label(self) -> str:
        f = self.family
        if f == "dunkl_z2m":
            return "prod |x_i|^(2 kappa_i) dx"
        p = self.measure_exponent()
        return "dx" if p == 0 else f"|x|^{p:g} dx"
