"""Physical constants, material parameters and frequency-regime classification.

Unit conventions used throughout the package:

* frequencies in rad/s, lengths in meters, temperatures in kelvin
* energies per unit area in J/m^2, pressures in N/m^2, forces in N
* conductivity in Gaussian units (s^-1); ``sigma_gaussian_from_si``
  converts an SI value at the boundary

A metal is characterized by its plasma frequency omega_p and Fermi
velocity v_F.  The interaction between two plates at separation ``a`` is
dominated by frequencies around the characteristic frequency
``omega_c = c/(2a)``.  Depending on where omega_c falls relative to the
transition frequency ``Omega = v_F * omega_p / c`` (the frequency where
the anomalous skin depth equals the field penetration depth c/omega_p),
the metal response is best described by the anomalous-skin-effect or the
collisionless-plasma (infrared optics) surface impedance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

__all__ = [
    "HBAR", "C_LIGHT", "K_B", "EPSILON_0",
    "PhysicalConstants", "CODATA",
    "MaterialParams", "GOLD", "sigma_gaussian_from_si",
    "ThermalState", "Geometry", "ToleranceConfig",
    "Regime", "InequalityCheck", "RegimeReport",
    "characteristic_frequency", "effective_temperature",
    "matsubara_frequency", "transition_frequency",
    "derive_anomalous_constant", "classify_regime",
]

# CODATA 2018
HBAR = 1.054571817e-34      # J s
C_LIGHT = 299792458.0       # m/s (exact)
K_B = 1.380649e-23          # J/K (exact)
EPSILON_0 = 8.8541878128e-12  # F/m


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants; fixed CODATA values, not user-tunable."""

    hbar: float = HBAR
    c: float = C_LIGHT
    k_B: float = K_B


CODATA = PhysicalConstants()


def sigma_gaussian_from_si(sigma_si: float) -> float:
    """Convert an SI conductivity (S/m) to Gaussian units (s^-1).

    sigma_G = sigma_SI / (4 pi eps_0)
    """
    if sigma_si <= 0.0:
        raise ValueError("conductivity must be positive")
    return sigma_si / (4.0 * math.pi * EPSILON_0)


_MATERIAL_FILE_KEYS = {"omega_p", "v_f", "sigma", "c_a"}


@dataclass(frozen=True)
class MaterialParams:
    """Free-electron parameters of a metal.

    plasma_frequency : rad/s
    fermi_velocity   : m/s
    conductivity     : Gaussian units, s^-1 (needed for the normal-skin model)
    anomalous_constant : m (rad/s)^(1/3); skin depth of the anomalous regime
        is delta_a(omega) = C_a * omega^(-1/3).  Derivable from omega_p and
        v_F, see `derive_anomalous_constant`.
    """

    plasma_frequency: float
    fermi_velocity: float
    conductivity: float | None = None
    anomalous_constant: float | None = None

    def __post_init__(self) -> None:
        if self.plasma_frequency <= 0.0:
            raise ValueError("plasma_frequency must be positive")
        if not 0.0 < self.fermi_velocity < C_LIGHT:
            raise ValueError("fermi_velocity must lie in (0, c)")
        if self.conductivity is not None and self.conductivity <= 0.0:
            raise ValueError("conductivity must be positive when given")
        if self.anomalous_constant is not None and self.anomalous_constant <= 0.0:
            raise ValueError("anomalous_constant must be positive when given")

    @property
    def plasma_wavelength(self) -> float:
        """lambda_p = 2 pi c / omega_p, in meters."""
        return 2.0 * math.pi * C_LIGHT / self.plasma_frequency

    @classmethod
    def from_file(cls, path: str | Path) -> "MaterialParams":
        """Parse a plain-text ``key=value`` material file.

        Recognized keys: omega_p, v_f, sigma, c_a.  Blank lines and lines
        starting with '#' are ignored; unknown keys are rejected.
        """
        values: dict[str, float] = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            if key not in _MATERIAL_FILE_KEYS:
                raise ValueError(
                    f"{path}:{lineno}: unknown key {key!r} "
                    f"(known: {', '.join(sorted(_MATERIAL_FILE_KEYS))})")
            if key in values:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                values[key] = float(text.strip())
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad number for {key}") from exc
        for required in ("omega_p", "v_f"):
            if required not in values:
                raise ValueError(f"{path}: missing required key {required!r}")
        return cls(
            plasma_frequency=values["omega_p"],
            fermi_velocity=values["v_f"],
            conductivity=values.get("sigma"),
            anomalous_constant=values.get("c_a"),
        )


# Gold: omega_p and v_F as used for all reference computations.
GOLD = MaterialParams(plasma_frequency=1.37e16, fermi_velocity=1.4e6)


@dataclass(frozen=True)
class ThermalState:
    """Equilibrium temperature in kelvin; T = 0 selects the continuous
    imaginary-frequency integral instead of the Matsubara sum."""

    temperature: float

    def __post_init__(self) -> None:
        if self.temperature < 0.0:
            raise ValueError("temperature must be non-negative")


@dataclass(frozen=True)
class Geometry:
    """Plate separation, plus the sphere radius for sphere-plate setups.

    The proximity-force conversion F = 2 pi R * (free energy per area) is
    accurate only for R >> a; a warning is emitted when R < 100 a.
    """

    separation: float
    sphere_radius: float | None = None

    def __post_init__(self) -> None:
        if self.separation <= 0.0:
            raise ValueError("separation must be positive")
        if self.sphere_radius is not None:
            if self.sphere_radius <= 0.0:
                raise ValueError("sphere_radius must be positive")
            if self.sphere_radius < 100.0 * self.separation:
                warnings.warn(
                    "sphere radius below 100*separation: proximity-force "
                    "conversion may be inaccurate", stacklevel=2)


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative tolerances for quadrature and Matsubara summation, and the
    fractional temperature step of the entropy finite difference."""

    quadrature_rel_tol: float = 1e-6
    sum_rel_tol: float = 1e-6
    entropy_step_fraction: float = 1e-3

    def __post_init__(self) -> None:
        for name in ("quadrature_rel_tol", "sum_rel_tol", "entropy_step_fraction"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-2:
                raise ValueError(f"{name} must lie in (0, 1e-2]")


class Regime(Enum):
    NORMAL_SKIN = "normal-skin"
    ANOMALOUS_SKIN = "anomalous-skin"
    INFRARED_OPTICS = "infrared-optics"
    TRANSITION = "transition"


@dataclass(frozen=True)
class InequalityCheck:
    """One applicability inequality, evaluated at the characteristic
    frequency.  ``margin`` is the ratio rhs/lhs of the strict form
    lhs << rhs (margin > 1 means satisfied); None when a needed parameter
    (mean free path, conductivity) is not modeled or not supplied."""

    label: str
    margin: float | None
    satisfied: bool | None
    note: str = ""


@dataclass(frozen=True)
class RegimeReport:
    characteristic_frequency: float
    transition_frequency: float
    transition_separation: float
    applicable_regime: Regime
    diagnostics: tuple[InequalityCheck, ...] = field(default_factory=tuple)


def characteristic_frequency(geometry: Geometry) -> float:
    """omega_c = c / (2 a), the frequency scale dominating the interaction."""
    return C_LIGHT / (2.0 * geometry.separation)


def effective_temperature(geometry: Geometry) -> float:
    """T_eff with k_B T_eff = hbar omega_c = hbar c / (2 a)."""
    return HBAR * C_LIGHT / (2.0 * geometry.separation * K_B)


def matsubara_frequency(l: int, state: ThermalState) -> float:
    """xi_l = 2 pi k_B T l / hbar for integer l >= 0.

    Requires T > 0; at T = 0 the spectrum is continuous and the
    zero-temperature integral applies instead.
    """
    if l < 0:
        raise ValueError("Matsubara index must be non-negative")
    if state.temperature <= 0.0:
        raise ValueError("Matsubara frequencies require T > 0; "
                         "use the continuous-spectrum integral at T = 0")
    return 2.0 * math.pi * K_B * state.temperature * l / HBAR


def transition_frequency(material: MaterialParams) -> float:
    """Frequency Omega where the anomalous skin depth v_F/Omega equals the
    plasma penetration depth c/omega_p; Omega = v_F omega_p / c."""
    return material.fermi_velocity * material.plasma_frequency / C_LIGHT


def derive_anomalous_constant(material: MaterialParams) -> float:
    """C_a such that delta_a(omega) = C_a omega^(-1/3) matches the plasma
    penetration depth c/omega_p at the transition frequency."""
    omega_tr = transition_frequency(material)
    return (C_LIGHT / material.plasma_frequency) * omega_tr ** (1.0 / 3.0)


def classify_regime(material: MaterialParams, geometry: Geometry,
                    state: ThermalState) -> RegimeReport:
    """Classify which impedance model applies at this separation.

    Infrared optics when lambda_p < a and omega_c > 2 Omega; anomalous skin
    effect when omega_c < Omega/2; Transition inside the factor-of-2 window.
    The normal-skin window collapses at low temperature (the electron mean
    free path grows as T falls) and the mean free path is not modeled here,
    so NORMAL_SKIN is never assigned; the l-dependent inequalities are
    reported as not evaluable.

    Warns when a <= lambda_p, where the impedance boundary condition itself
    stops being applicable.
    """
    omega_c = characteristic_frequency(geometry)
    omega_tr = transition_frequency(material)
    a_tr = C_LIGHT / (2.0 * omega_tr)
    lam_p = material.plasma_wavelength
    a = geometry.separation

    if a <= lam_p:
        warnings.warn(
            f"separation {a:.3g} m is not above the plasma wavelength "
            f"{lam_p:.3g} m; the impedance approach is inapplicable there",
            stacklevel=2)

    v_over_w = material.fermi_velocity / omega_c
    delta_r = C_LIGHT / material.plasma_frequency
    c_a = material.anomalous_constant
    if c_a is None:
        c_a = derive_anomalous_constant(material)
    delta_a = c_a * omega_c ** (-1.0 / 3.0)

    checks = [
        InequalityCheck(
            label="impedance applicability: lambda_p < a",
            margin=a / lam_p,
            satisfied=a > lam_p),
        InequalityCheck(
            label="anomalous skin: delta_a(omega_c) << v_F/omega_c",
            margin=v_over_w / delta_a,
            satisfied=delta_a < v_over_w),
        InequalityCheck(
            label="infrared optics: v_F/omega_c << delta_r = c/omega_p",
            margin=delta_r / v_over_w,
            satisfied=v_over_w < delta_r),
        InequalityCheck(
            label="anomalous skin: delta_a(omega_c) << l",
            margin=None, satisfied=None,
            note="mean free path l(T) not modeled"),
        InequalityCheck(
            label="infrared optics: delta_r << l",
            margin=None, satisfied=None,
            note="mean free path l(T) not modeled"),
    ]
    if material.conductivity is not None:
        delta_n = C_LIGHT / math.sqrt(
            2.0 * math.pi * material.conductivity * omega_c)
        checks.append(InequalityCheck(
            label="normal skin: l << delta_n(omega_c)",
            margin=None, satisfied=None,
            note=f"delta_n(omega_c) = {delta_n:.4g} m; "
                 "mean free path l(T) not modeled"))
    else:
        checks.append(InequalityCheck(
            label="normal skin: l << delta_n(omega_c)",
            margin=None, satisfied=None,
            note="requires conductivity and mean free path"))
    checks.append(InequalityCheck(
        label="normal skin: l << v_F/omega_c",
        margin=None, satisfied=None,
        note="mean free path l(T) not modeled; window collapses at low T"))

    if omega_c > 2.0 * omega_tr and a > lam_p:
        regime = Regime.INFRARED_OPTICS
    elif omega_c < 0.5 * omega_tr:
        regime = Regime.ANOMALOUS_SKIN
    else:
        regime = Regime.TRANSITION

    return RegimeReport(
        characteristic_frequency=omega_c,
        transition_frequency=omega_tr,
        transition_separation=a_tr,
        applicable_regime=regime,
        diagnostics=tuple(checks),
    )
