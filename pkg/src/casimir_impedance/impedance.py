"""Leontovich surface impedance on the imaginary frequency axis.

All reflection properties of the metal enter through Z(i xi), the analytic
continuation of the surface impedance to imaginary frequencies, where it is
real and non-negative for every model:

    ideal metal       Z = 0
    normal skin       Z(i xi) = sqrt(xi / (4 pi sigma))
    anomalous skin    Z(i xi) = (4 / (3 sqrt(3))) * C_a * xi^(2/3) / c
    infrared optics   Z(i xi) = xi / sqrt(omega_p^2 + xi^2)

The real-frequency forms are

    Z_n(w) = (1 - i) sqrt(w / (8 pi sigma))
    Z_a(w) = (2 (1 - i sqrt(3)) / (3 sqrt(3))) * w * delta_a(w) / c
    Z_r(w) = -i w / sqrt(omega_p^2 - w^2)

with delta_a(w) = C_a w^(-1/3).  Substituting w = i xi with principal
branches makes each of them real: sqrt(i) = e^{i pi/4} cancels the phase of
(1 - i), and (i xi)^{2/3} = xi^{2/3} e^{i pi/3} cancels (1 - i sqrt(3)) =
2 e^{-i pi/3}.  The continuation is forced to be real on the axis, which
pins the branch choice; the test suite checks the closed forms against
direct complex evaluation.

Whichever model is chosen for a computation is used at *all* Matsubara
frequencies of that computation; the result is insensitive to the impedance
outside roughly (0.1, 10) times the characteristic frequency.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from .physcore import C_LIGHT, Geometry

__all__ = [
    "IdealMetal", "NormalSkin", "AnomalousSkin", "InfraredOptics",
    "ImpedanceModel", "ImpedanceValue",
    "impedance_imag_axis", "dimensionless_impedance",
]

_ANOM_PREFACTOR = 4.0 / (3.0 * math.sqrt(3.0))


@dataclass(frozen=True)
class IdealMetal:
    """Perfect conductor: Z identically zero."""


@dataclass(frozen=True)
class NormalSkin:
    """Local-conductivity (normal skin effect) metal; sigma in Gaussian
    units (s^-1)."""

    sigma: float

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class AnomalousSkin:
    """Nonlocal (anomalous skin effect) metal with a spherical Fermi
    surface; c_a in m (rad/s)^(1/3)."""

    c_a: float

    def __post_init__(self) -> None:
        if self.c_a <= 0.0:
            raise ValueError("c_a must be positive")


@dataclass(frozen=True)
class InfraredOptics:
    """Collisionless free-electron plasma; omega_p in rad/s."""

    omega_p: float

    def __post_init__(self) -> None:
        if self.omega_p <= 0.0:
            raise ValueError("omega_p must be positive")


ImpedanceModel = Union[IdealMetal, NormalSkin, AnomalousSkin, InfraredOptics]


@dataclass(frozen=True)
class ImpedanceValue:
    """Z(i xi): dimensionless, real, non-negative."""

    z: float


def _z_on_axis(model: ImpedanceModel, xi):
    """Vectorized Z(i xi) for ndarray or scalar xi >= 0 (no warnings)."""
    xi = np.asarray(xi, dtype=float)
    if isinstance(model, IdealMetal):
        return np.zeros_like(xi)
    if isinstance(model, NormalSkin):
        return np.sqrt(xi / (4.0 * math.pi * model.sigma))
    if isinstance(model, AnomalousSkin):
        return _ANOM_PREFACTOR * model.c_a * xi ** (2.0 / 3.0) / C_LIGHT
    if isinstance(model, InfraredOptics):
        return xi / np.hypot(model.omega_p, xi)
    raise TypeError(f"not an impedance model: {model!r}")


def impedance_imag_axis(model: ImpedanceModel, xi: float) -> ImpedanceValue:
    """Evaluate Z(i xi) for a single imaginary frequency xi >= 0 (rad/s).

    Warns when the result exceeds 0.3: the impedance boundary condition
    assumes |Z| << 1, which holds for real nonmagnetic metals at the
    frequencies that matter.
    """
    if xi < 0.0:
        raise ValueError("imaginary frequency must be non-negative")
    z = float(_z_on_axis(model, xi))
    if z > 0.3:
        warnings.warn(f"|Z| = {z:.3g} is not small; the impedance boundary "
                      "condition assumes |Z| << 1", stacklevel=2)
    return ImpedanceValue(z)


def dimensionless_impedance(model: ImpedanceModel, geometry: Geometry,
                            zeta: float) -> ImpedanceValue:
    """Z at the scaled frequency zeta = 2 a xi / c, i.e. Z(i c zeta / (2a))."""
    if zeta < 0.0:
        raise ValueError("zeta must be non-negative")
    return impedance_imag_axis(
        model, zeta * C_LIGHT / (2.0 * geometry.separation))
