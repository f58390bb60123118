"""Theta evaluation with certified Gaussian-tail truncation.

Convention (fixed throughout the package): for characteristics c1, c2 and
a point v in C^2,

    theta[c1; c2](v, Z) = sum_{l in Z^2} exp( pi*i (l+c1)^T Z (l+c1)
                                              + 2*pi*i (l+c1) . (v+c2) ).

The truncation box [-R, R]^2 is chosen so that a Gaussian majorant of the
dropped tail, normalised by the dominant term's magnitude, falls below the
requested tolerance.  The lattice sum itself runs in a compiled Cython
kernel when available, with a numpy fallback selected at import time
(set THETA_LAB_PURE=1 to force the fallback).
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import RadiusExceeded
from .siegel import (
    OMEGA,
    EvalSettings,
    PeriodMatrix,
    SurfacePoint,
    ThetaCharacteristic,
    quarter_characteristic,
)


def _load_kernel():
    if os.environ.get("THETA_LAB_PURE") == "1":
        from . import _kernel_py

        return _kernel_py
    try:
        from . import _kernel  # compiled extension, may be absent

        return _kernel
    except ImportError:
        from . import _kernel_py

        return _kernel_py


_KERNEL = _load_kernel()


def kernel_backend() -> str:
    """Name of the active lattice-sum backend: 'cython' or 'python'."""
    return _KERNEL.BACKEND


def _tail_bound(lam: float, shift: float, radius: int, grad_order: int) -> float:
    """Majorant for the dropped tail, relative to the dominant term.

    Terms with sup-norm k > radius number 8k and are each bounded by
    (2 pi (k+1))^grad_order * exp(-pi lam (k - shift)^2).
    """
    total = 0.0
    for k in range(radius + 1, radius + 2000):
        d = max(k - shift, 0.0)
        t = 8.0 * k * (2.0 * math.pi * (k + 1)) ** grad_order * math.exp(
            -math.pi * lam * d * d
        )
        total += t
        if d > 1.0 and t < 1e-18 * max(total, 1.0):
            break
    return total


def truncation_radius(
    lam_min: float, shift: float, tol: float, max_radius: int, grad_order: int = 0
) -> int:
    """Smallest box radius whose tail majorant is below tol.

    lam_min is the least eigenvalue of Im Z, shift the sup-norm distance of
    the Gaussian centre from the origin.  Raises RadiusExceeded when no
    radius up to max_radius suffices.
    """
    R = max(1, math.ceil(shift))
    while R <= max_radius:
        if _tail_bound(lam_min, shift, R, grad_order) < tol:
            return R
        R += 1
    raise RadiusExceeded(
        f"tolerance {tol} needs truncation radius > {max_radius} "
        f"(lambda_min={lam_min:.4g}, shift={shift:.4g})"
    )


def _shift_norm(Z: PeriodMatrix, chi: ThetaCharacteristic, v) -> float:
    Y = Z.imag_part()
    c2 = chi.c2_floats()
    beta = np.array([(v[0] + c2[0]).imag, (v[1] + c2[1]).imag])
    center = np.array(chi.c1_floats()) + np.linalg.solve(Y, beta)
    return float(np.max(np.abs(center)))


def _radius_for(Z, chis, points, settings: EvalSettings, grad_order: int) -> int:
    lam = Z.min_imag_eigenvalue()
    shift = max(_shift_norm(Z, chi, v) for chi in chis for v in points)
    return truncation_radius(lam, shift, settings.tol, settings.max_radius, grad_order)


def theta_char(
    chi: ThetaCharacteristic,
    v: SurfacePoint | tuple[complex, complex],
    Z: PeriodMatrix,
    settings: EvalSettings = EvalSettings(),
    radius: int | None = None,
) -> complex:
    """Evaluate theta[c1; c2](v, Z) by certified truncated lattice sum."""
    if radius is None:
        radius = _radius_for(Z, [chi], [v], settings, 0)
    a = chi.c1_floats()
    c2 = chi.c2_floats()
    return _KERNEL.theta_sum(
        a[0], a[1], Z.z11, Z.z12, Z.z22, v[0] + c2[0], v[1] + c2[1], radius
    )


_CHI_1 = OMEGA
_CHI_3 = quarter_characteristic(3)


def odd_theta(
    v: SurfacePoint | tuple[complex, complex],
    Z: PeriodMatrix,
    settings: EvalSettings = EvalSettings(),
    radius: int | None = None,
) -> complex:
    """The odd section theta[3w; 0](v) - theta[w; 0](v), w = (0, 1/4).

    Its zero divisor is the genus-5 curve the rest of the package studies.
    """
    if radius is None:
        radius = _radius_for(Z, [_CHI_1, _CHI_3], [v], settings, 0)
    return theta_char(_CHI_3, v, Z, settings, radius) - theta_char(
        _CHI_1, v, Z, settings, radius
    )


def odd_theta_gradient(
    v: SurfacePoint | tuple[complex, complex],
    Z: PeriodMatrix,
    settings: EvalSettings = EvalSettings(),
    radius: int | None = None,
) -> tuple[complex, complex]:
    """Complex gradient (d/dv1, d/dv2) of the odd section."""
    _, g = odd_theta_with_gradient(v, Z, settings, radius)
    return g


def odd_theta_with_gradient(
    v: SurfacePoint | tuple[complex, complex],
    Z: PeriodMatrix,
    settings: EvalSettings = EvalSettings(),
    radius: int | None = None,
):
    """Value and gradient of the odd section in one pass (shared radius)."""
    if radius is None:
        radius = _radius_for(Z, [_CHI_1, _CHI_3], [v], settings, 1)
    out = []
    for chi in (_CHI_3, _CHI_1):
        a = chi.c1_floats()
        out.append(
            _KERNEL.theta_sum_grad(
                a[0], a[1], Z.z11, Z.z12, Z.z22, v[0], v[1], radius
            )
        )
    (t3, g31, g32), (t1, g11, g12) = out
    return t3 - t1, (g31 - g11, g32 - g12)


def theta_basis(
    v: SurfacePoint | tuple[complex, complex],
    Z: PeriodMatrix,
    settings: EvalSettings = EvalSettings(),
) -> list[complex]:
    """Values of the four basis sections theta[k*w; 0], k = 0..3, at v."""
    chis = [quarter_characteristic(k) for k in range(4)]
    radius = _radius_for(Z, chis, [v], settings, 0)
    return [theta_char(chi, v, Z, settings, radius) for chi in chis]
