"""Integral-transform kernels, evaluated on batches of point pairs.

``evaluate(params, x, y)`` returns an ``(N, 2^m)`` complex array of
Clifford coefficients (blade bitmask order); scalar families fill column 0.
Normalising constants are not included; see ``KernelParams.normalization``.
"""

from __future__ import annotations

import numpy as np

from ..multivector import Multivector
from ._common import PairGeometry, geometry
from .clifford import cft_class_kernel, cft_kernel, cft_series_parts, even_explicit_parts, frac_cft_kernel
from .deformed import deformed_kernel, deformed_kernel_at_origin, deformed_kernel_fourier
from .gft import (
    GFTPreset,
    cylindrical_preset,
    ebling_scheuermann_preset,
    gft_kernel,
    quaternionic_preset,
    sommen_preset,
)
from .params import (
    FAMILIES,
    ExcludedParameterError,
    KernelParams,
    KernelUnavailableError,
    OpenProblemError,
    ParameterError,
)
from .scalar import (
    classical_kernel,
    dunkl_z2m_kernel,
    fractional_kernel,
    radial_kernel,
    radial_rank1_from_points,
    radial_rank1_kernel,
)

__all__ = [
    "FAMILIES",
    "KernelParams",
    "ParameterError",
    "ExcludedParameterError",
    "OpenProblemError",
    "KernelUnavailableError",
    "PairGeometry",
    "geometry",
    "evaluate",
    "kernel_value",
    "classical_kernel",
    "fractional_kernel",
    "dunkl_z2m_kernel",
    "radial_kernel",
    "radial_rank1_kernel",
    "cft_kernel",
    "frac_cft_kernel",
    "cft_class_kernel",
    "even_explicit_parts",
    "cft_series_parts",
    "deformed_kernel",
    "deformed_kernel_fourier",
    "deformed_kernel_at_origin",
    "gft_kernel",
    "GFTPreset",
    "sommen_preset",
    "quaternionic_preset",
    "ebling_scheuermann_preset",
    "cylindrical_preset",
]


def _scalar(geo: PairGeometry, values) -> np.ndarray:
    out = np.zeros((geo.n, 1 << geo.m), dtype=complex)
    out[:, 0] = values
    return out


def evaluate(params: KernelParams, x, y) -> np.ndarray:
    """Kernel values ``K(x_i, y_i)`` for broadcast point batches."""
    geo = geometry(x, y)
    if geo.m != params.m:
        raise ParameterError(f"points live in R^{geo.m} but params say m = {params.m}")
    f, mode, tol = params.family, params.mode, params.tol
    if f == "classical":
        return _scalar(geo, classical_kernel(geo, "exp" if mode == "closed" else mode, tol))
    if f == "fractional":
        return _scalar(geo, fractional_kernel(geo, params.alpha))
    if f == "dunkl_z2m":
        return _scalar(geo, dunkl_z2m_kernel(geo, params.kappa_vector))
    if f == "radial":
        return _scalar(geo, radial_kernel(geo, params.a, mode, tol))
    if f == "radial_rank1":
        return _scalar(geo, radial_rank1_from_points(geo, params.kappa_scalar, params.a))
    if f == "cft":
        return cft_kernel(geo, params.sign, mode, tol)
    if f == "cft_fractional":
        return frac_cft_kernel(geo, params.alpha, params.beta, mode, tol)
    if f == "cft_class":
        return cft_class_kernel(geo, params.j, mode, tol)
    if f == "deformed_semigroup":
        om = complex(params.omega)
        if mode == "fourier":
            if abs(om - 0.5j * np.pi) > 1e-15:
                raise ParameterError("the dedicated Fourier series needs omega = i pi/2")
            return deformed_kernel_fourier(geo, params.c, tol)
        return deformed_kernel(geo, params.c, om, tol)
    if f == "gft":
        preset = params.extra.get("preset")
        if not isinstance(preset, GFTPreset):
            raise ParameterError("gft family needs extra={'preset': GFTPreset}")
        out = np.zeros((geo.n, 2 << geo.m), dtype=complex)
        size = 1 << geo.m
        for i in range(geo.n):
            left, right = preset.kernel(geo.x[i], geo.y[i])
            out[i, :size] = left.to_array()
            out[i, size:] = right.to_array()
        return out
    raise KernelUnavailableError(f)


def kernel_value(params: KernelParams, x, y) -> Multivector:
    """Single-point kernel as a ``Multivector`` with complex coefficients."""
    arr = evaluate(params, np.asarray(x, dtype=float)[None, :], np.asarray(y, dtype=float)[None, :])[0]
    if params.family == "gft":
        raise ParameterError("gft kernels are (left, right) pairs; use gft_kernel")
    return Multivector.from_array(arr, params.m)
