"""Casimir observables between parallel real-metal plates.

Everything is computed in the scaled spectral variables zeta = 2 a xi / c
and y = 2 a q.  The free energy per unit area at temperature T is the
primed Matsubara sum (l = 0 carries weight 1/2)

    F = (k_B T / 8 pi a^2) * sum'_l  I(zeta_l),
    I(zeta) = int_zeta^inf y dy [ 2 ln(1 - e^-y)
                                  + ln(1 + X_par /(e^y - 1))
                                  + ln(1 + X_perp/(e^y - 1)) ],

with zeta_l = 2 a xi_l / c and the transparency factors X = 1 - r^2 of the
chosen reflection model (X = 0 reproduces the ideal metal).  At T = 0 the
sum becomes (1/zeta_1) * integral and

    E = (hbar c / 32 pi^2 a^3) * int_0^inf dzeta I(zeta),

whose ideal-metal part is the closed form E0 = -pi^2 hbar c/(720 a^3).
The pressure between plates is evaluated from its own spectral
representation (not by differentiating F numerically):

    P = -(k_B T / 8 pi a^3) * sum'_l int y^2 dy sum_p r_p^2 e^-y/(1 - r_p^2 e^-y)

and the sphere-plate force through the proximity relation F = 2 pi R F_pp.
The entropy S = -dF/dT uses a Richardson-extrapolated central difference.

The zero-frequency (l = 0) term always comes from the analytic limits of
the reflection coefficients, never from substituting zeta = 0 into the
finite-frequency formulas.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Union

import numpy as np

from .physcore import (
    C_LIGHT, HBAR, K_B, Geometry, MaterialParams, ThermalState,
    ToleranceConfig, characteristic_frequency, effective_temperature,
    matsubara_frequency,
)
from .impedance import (
    AnomalousSkin, IdealMetal, ImpedanceModel, InfraredOptics, NormalSkin,
)
from .reflection import (
    DielectricModel, Drude, Plasma, lifshitz_x_grid, x_factors_grid,
)
from .quadrature import (
    IntegralResult, SumResult, integrate_interval, integrate_semiinf,
    matsubara_sum, tail_cutoff,
)

__all__ = [
    "Quantity", "ResultValue", "Model", "ZETA3",
    "energy_ideal", "free_energy_ideal", "energy_T0", "free_energy",
    "thermal_correction", "pressure_plates", "force_sphere_plate",
    "entropy", "lowT_asymptotics", "spectral_contribution",
]

Model = Union[ImpedanceModel, DielectricModel]

ZETA3 = 1.2020569031595943  # Riemann zeta(3)

DEFAULT_TOL = ToleranceConfig()


class Quantity(Enum):
    ENERGY_PER_AREA = "energy_per_area"                    # J/m^2
    FREE_ENERGY_PER_AREA = "free_energy_per_area"          # J/m^2
    PRESSURE_PLATES = "pressure_plates"                    # N/m^2
    FORCE_SPHERE_PLATE = "force_sphere_plate"              # N
    ENTROPY_PER_AREA = "entropy_per_area"                  # J/(m^2 K)
    CORRECTION_FACTOR = "correction_factor"                # dimensionless
    RELATIVE_THERMAL_CORRECTION = "relative_thermal_correction"


@dataclass(frozen=True)
class ResultValue:
    """An observable with its estimated numerical error and convergence
    diagnostics (term counts, integrand evaluations, ...)."""

    quantity: Quantity
    value: float
    numeric_error: float
    diagnostics: Mapping[str, object]


def _check_impedance_applicability(model: Model, geometry: Geometry) -> None:
    # only the impedance family has this restriction, and only the
    # plasma-frequency variant knows its own lambda_p
    if not isinstance(model, InfraredOptics):
        return
    lam_p = 2.0 * math.pi * C_LIGHT / model.omega_p
    if geometry.separation <= lam_p:
        warnings.warn(
            f"separation {geometry.separation:.3g} m is not above the plasma "
            f"wavelength {lam_p:.3g} m; results there are outside the "
            "validity range of the surface-impedance description",
            stacklevel=3)


def _x_grid(model: Model, geometry: Geometry, zeta: float, y: np.ndarray):
    """(X_par, X_perp) arrays for any reflection model, zeta = 0 included."""
    if isinstance(model, (IdealMetal, NormalSkin, AnomalousSkin,
                          InfraredOptics)):
        return x_factors_grid(model, geometry, zeta, y)
    if isinstance(model, (Plasma, Drude)):
        return lifshitz_x_grid(model, geometry, zeta, y)
    raise TypeError(f"not a reflection model: {model!r}")


def _free_energy_integrand(model: Model, geometry: Geometry, zeta: float):
    """y * [2 ln(1-e^-y) + sum_p ln(1 + X_p/(e^y - 1))] as a vectorized
    function of y."""

    def f(y: np.ndarray) -> np.ndarray:
        xpar, xperp = _x_grid(model, geometry, zeta, y)
        em = np.exp(-y)
        t = 1.0 / np.expm1(y)
        return y * (2.0 * np.log1p(-em)
                    + np.log1p(xpar * t) + np.log1p(xperp * t))

    return f


def _pressure_integrand(model: Model, geometry: Geometry, zeta: float):
    """y^2 * sum_p r_p^2 e^-y / (1 - r_p^2 e^-y), written through
    X = 1 - r^2 so the denominator 1 - r^2 e^-y = (1-e^-y) + X e^-y is
    cancellation-free."""

    def f(y: np.ndarray) -> np.ndarray:
        xpar, xperp = _x_grid(model, geometry, zeta, y)
        em = np.exp(-y)
        one_minus_em = -np.expm1(-y)
        par = (1.0 - xpar) * em / (one_minus_em + xpar * em)
        perp = (1.0 - xperp) * em / (one_minus_em + xperp * em)
        return y * y * (par + perp)

    return f


def energy_ideal(geometry: Geometry) -> ResultValue:
    """Ideal-metal zero-temperature energy per area, -pi^2 hbar c/(720 a^3)."""
    a = geometry.separation
    value = -math.pi ** 2 * HBAR * C_LIGHT / (720.0 * a ** 3)
    return ResultValue(Quantity.ENERGY_PER_AREA, value, 0.0,
                       {"closed_form": True})


def free_energy_ideal(geometry: Geometry, state: ThermalState) -> ResultValue:
    """Ideal-metal free energy per area from its closed series.

    With t = T/T_eff (k_B T_eff = hbar c / 2a),

        F = E0 { 1 + (45/pi^3) sum_{l>=1} [ t^3 coth(pi l/t)/l^3
                 + pi t^2 sinh^-2(pi l/t)/l^2 ] - t^4 }.

    For the numerical evaluation coth is split as 1 + 2/(e^{2x} - 1), which
    pulls the slowly decaying part of the sum into the exact zeta(3) term
    and leaves remainder terms decaying like exp(-2 pi l / t); terms are
    accumulated until below 1e-16 of the running total.
    """
    e0 = energy_ideal(geometry).value
    t = state.temperature / effective_temperature(geometry)
    if t == 0.0:
        return ResultValue(Quantity.FREE_ENERGY_PER_AREA, e0, 0.0,
                           {"closed_form": True, "terms_used": 0})
    braces = 1.0 + (45.0 / math.pi ** 3) * t ** 3 * ZETA3 - t ** 4
    l = 0
    while True:
        l += 1
        x = math.pi * l / t
        if x > 360.0:  # exp(-2x) below 1e-312: nothing left
            break
        em = math.exp(-2.0 * x)
        term = (45.0 / math.pi ** 3) * (
            2.0 * t ** 3 / l ** 3 * em / (1.0 - em)
            + math.pi * t ** 2 / l ** 2 * 4.0 * em / (1.0 - em) ** 2)
        braces += term
        if abs(term) < 1e-16 * abs(braces):
            break
    return ResultValue(Quantity.FREE_ENERGY_PER_AREA, e0 * braces,
                       abs(e0 * braces) * 1e-15,
                       {"closed_form": True, "terms_used": l})


def _double_integral(model: Model, geometry: Geometry, rel_tol: float,
                     zeta_lo: float, zeta_hi: float | None,
                     integrand_factory) -> tuple[IntegralResult, int]:
    """Nested zeta/y integration: outer over zeta, inner semi-infinite in y
    starting at zeta.  Returns the outer result and the total number of
    integrand evaluations (inner included)."""
    inner_tol = max(rel_tol * 1e-2, 1e-13)
    evals = 0

    def outer(zetas: np.ndarray) -> np.ndarray:
        nonlocal evals
        out = np.empty_like(zetas)
        for i, z in enumerate(zetas):
            res = integrate_semiinf(integrand_factory(model, geometry, z),
                                    z, inner_tol)
            evals += res.evaluations
            out[i] = res.value
        return out

    if zeta_hi is None:
        upper = tail_cutoff(zeta_lo, rel_tol)
    else:
        upper = min(zeta_hi, tail_cutoff(zeta_lo, rel_tol))
    result = integrate_interval(outer, zeta_lo, upper, rel_tol,
                                max_panels=8192)
    return result, evals + result.evaluations


def energy_T0(model: Model, geometry: Geometry,
              tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Zero-temperature energy per area for any reflection model.

    Also reports the correction factor E/E0 relative to the ideal metal in
    the diagnostics.
    """
    _check_impedance_applicability(model, geometry)
    a = geometry.separation
    rel_tol = tol.quadrature_rel_tol
    outer, evals = _double_integral(model, geometry, rel_tol, 0.0, None,
                                    _free_energy_integrand)
    prefac = HBAR * C_LIGHT / (32.0 * math.pi ** 2 * a ** 3)
    value = prefac * outer.value
    err = prefac * outer.abs_error_estimate + abs(value) * rel_tol * 0.1
    e0 = energy_ideal(geometry).value
    return ResultValue(Quantity.ENERGY_PER_AREA, value, err, {
        "correction_factor": value / e0,
        "evaluations": evals,
    })


def _matsubara_observable(model: Model, geometry: Geometry,
                          state: ThermalState, tol: ToleranceConfig,
                          integrand_factory) -> tuple[SumResult, float, int]:
    """Run the primed Matsubara sum of per-l y-integrals.

    Returns (sum result, absolute error estimate in the summed units,
    evaluations).  The summation floor ceil(10 omega_c / xi_1) guarantees
    the spectral window that dominates the result is covered even when
    early terms are small.  The error estimate combines the per-term
    quadrature errors with a geometric bound on the truncated tail: the
    terms decay at least like exp(-zeta_1 l), so the omitted remainder is
    at most ~ last_term / (exp(zeta_1) - 1).
    """
    a = geometry.separation
    xi1 = matsubara_frequency(1, state)
    zeta1 = 2.0 * a * xi1 / C_LIGHT
    omega_c = characteristic_frequency(geometry)
    l_floor = max(1, math.ceil(10.0 * omega_c / xi1))
    quad_errs: list[float] = []
    evals = 0

    def term(l: int) -> float:
        # the l = 0 half-weight is applied by matsubara_sum itself
        nonlocal evals
        zeta_l = l * zeta1
        res = integrate_semiinf(integrand_factory(model, geometry, zeta_l),
                                zeta_l, tol.quadrature_rel_tol)
        quad_errs.append(res.abs_error_estimate)
        evals += res.evaluations
        return res.value

    s = matsubara_sum(term, tol.sum_rel_tol, l_floor)
    tail_est = s.last_term_magnitude / math.expm1(zeta1)
    return s, math.fsum(quad_errs) + tail_est, evals


def free_energy(model: Model, geometry: Geometry, state: ThermalState,
                tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Free energy per unit area at T > 0 (J/m^2, negative = attraction).

    The l = 0 term uses the analytic zero-frequency limits of the model.
    At T = 0 use `energy_T0` (continuous spectrum) instead.
    """
    if state.temperature <= 0.0:
        raise ValueError("free_energy requires T > 0; use energy_T0 at T = 0")
    _check_impedance_applicability(model, geometry)
    a = geometry.separation
    s, sum_err, evals = _matsubara_observable(
        model, geometry, state, tol, _free_energy_integrand)
    prefac = K_B * state.temperature / (8.0 * math.pi * a * a)
    return ResultValue(
        Quantity.FREE_ENERGY_PER_AREA, prefac * s.value,
        prefac * sum_err, {
            "terms_used": s.terms_used,
            "last_term_magnitude": s.last_term_magnitude,
            "evaluations": evals,
        })


def thermal_correction(model: Model, geometry: Geometry, state: ThermalState,
                       tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Relative thermal correction [F(a,T) - E(a)] / E(a).

    E(a) is computed with the same reflection model, so the ratio isolates
    the temperature effect.  Positive in the attractive regime (F below E).
    """
    fe = free_energy(model, geometry, state, tol)
    e0 = energy_T0(model, geometry, tol)
    value = (fe.value - e0.value) / e0.value
    err = (fe.numeric_error + e0.numeric_error) / abs(e0.value)
    return ResultValue(Quantity.RELATIVE_THERMAL_CORRECTION, value, err, {
        "free_energy": fe.value,
        "energy_T0": e0.value,
        "correction_factor": e0.diagnostics["correction_factor"],
        "terms_used": fe.diagnostics["terms_used"],
    })


def pressure_plates(model: Model, geometry: Geometry, state: ThermalState,
                    tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Pressure between the plates (N/m^2, negative = attraction).

    Evaluated from the spectral representation of -dF/da directly, not by
    numerically differentiating the free energy.  T = 0 is accepted and
    handled by the continuous-spectrum double integral.
    """
    _check_impedance_applicability(model, geometry)
    a = geometry.separation
    if state.temperature > 0.0:
        s, sum_err, evals = _matsubara_observable(
            model, geometry, state, tol, _pressure_integrand)
        prefac = -K_B * state.temperature / (8.0 * math.pi * a ** 3)
        return ResultValue(
            Quantity.PRESSURE_PLATES, prefac * s.value,
            abs(prefac) * sum_err, {
                "terms_used": s.terms_used,
                "last_term_magnitude": s.last_term_magnitude,
                "evaluations": evals,
            })
    outer, evals = _double_integral(model, geometry, tol.quadrature_rel_tol,
                                    0.0, None, _pressure_integrand)
    prefac = -HBAR * C_LIGHT / (32.0 * math.pi ** 2 * a ** 4)
    return ResultValue(
        Quantity.PRESSURE_PLATES, prefac * outer.value,
        abs(prefac) * outer.abs_error_estimate, {"evaluations": evals})


def force_sphere_plate(model: Model, geometry: Geometry, state: ThermalState,
                       tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Sphere-plate force via the proximity relation F = 2 pi R F_pp(a)
    (2 pi R E(a) at T = 0); requires geometry.sphere_radius."""
    if geometry.sphere_radius is None:
        raise ValueError("force_sphere_plate requires geometry.sphere_radius")
    if state.temperature > 0.0:
        base = free_energy(model, geometry, state, tol)
    else:
        base = energy_T0(model, geometry, tol)
    scale = 2.0 * math.pi * geometry.sphere_radius
    return ResultValue(
        Quantity.FORCE_SPHERE_PLATE, scale * base.value,
        scale * base.numeric_error, dict(base.diagnostics))


def entropy(model: Model, geometry: Geometry, state: ThermalState,
            tol: ToleranceConfig = DEFAULT_TOL) -> ResultValue:
    """Entropy per unit area S = -dF/dT (J/(m^2 K)).

    One Richardson extrapolation level over central differences with steps
    h and h/2, h = entropy_step_fraction * T.  The reported numeric_error
    combines the Richardson correction with the propagated free-energy
    errors; an entropy indistinguishable from zero (error >= |value|) is a
    valid outcome near T = 0 and is flagged in the diagnostics.
    """
    temp = state.temperature
    if temp <= 0.0:
        raise ValueError("entropy requires T > 0")
    h = tol.entropy_step_fraction * temp

    def diff(step: float) -> tuple[float, float]:
        lo = free_energy(model, geometry, ThermalState(temp - step), tol)
        hi = free_energy(model, geometry, ThermalState(temp + step), tol)
        d = (lo.value - hi.value) / (2.0 * step)
        return d, (lo.numeric_error + hi.numeric_error) / (2.0 * step)

    d1, _ = diff(h)
    d2, sigma2 = diff(0.5 * h)
    value = (4.0 * d2 - d1) / 3.0
    err = abs(value - d2) + sigma2
    return ResultValue(Quantity.ENTROPY_PER_AREA, value, err, {
        "step": h,
        "indistinguishable_from_zero": err >= abs(value),
    })


def lowT_asymptotics(material: MaterialParams, geometry: Geometry,
                     state: ThermalState,
                     tol: ToleranceConfig = DEFAULT_TOL,
                     ) -> tuple[ResultValue, ResultValue]:
    """Perturbative low-temperature free energy and entropy in the
    collisionless-plasma (infrared optics) regime.

    With t = T/T_eff and the penetration depth delta_r = c/omega_p,

        F(a,T) = E(a) - (hbar c zeta(3) / 16 pi a^3)
                   [ (1 + 2 delta_r/a) t^3
                     - (pi^3 / 45 zeta(3)) (1 + 4 delta_r/a) t^4 ],
        S(a,T) = (3 k_B zeta(3) / 8 pi a^2) t^2
                   [ (1 + 2 delta_r/a)
                     - (4 pi^3 / 135 zeta(3)) (1 + 4 delta_r/a) t ],

    valid for t << 1; rejected for T >= 0.1 T_eff.  E(a) is the numeric
    zero-temperature energy with the plasma-frequency impedance.
    """
    temp = state.temperature
    t_eff = effective_temperature(geometry)
    if temp >= 0.1 * t_eff:
        raise ValueError(
            f"low-T expansion requires T < 0.1 T_eff = {0.1 * t_eff:.4g} K")
    a = geometry.separation
    t = temp / t_eff
    delta_r = C_LIGHT / material.plasma_frequency
    base = energy_T0(InfraredOptics(material.plasma_frequency), geometry, tol)

    scale_f = HBAR * C_LIGHT * ZETA3 / (16.0 * math.pi * a ** 3)
    bracket = ((1.0 + 2.0 * delta_r / a) * t ** 3
               - (math.pi ** 3 / (45.0 * ZETA3))
               * (1.0 + 4.0 * delta_r / a) * t ** 4)
    f_value = base.value - scale_f * bracket
    # next omitted order is O(t^5) in the bracket
    f_err = base.numeric_error + scale_f * t ** 5

    scale_s = 3.0 * K_B * ZETA3 / (8.0 * math.pi * a * a)
    s_value = scale_s * t * t * (
        (1.0 + 2.0 * delta_r / a)
        - (4.0 * math.pi ** 3 / (135.0 * ZETA3))
        * (1.0 + 4.0 * delta_r / a) * t)
    s_err = scale_s * t ** 4

    diag = {"t": t, "delta_r_over_a": delta_r / a}
    return (ResultValue(Quantity.FREE_ENERGY_PER_AREA, f_value, f_err, diag),
            ResultValue(Quantity.ENTROPY_PER_AREA, s_value, s_err, diag))


def spectral_contribution(model: Model, geometry: Geometry,
                          window: tuple[float, float],
                          tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Fraction of the zero-temperature energy contributed by scaled
    frequencies zeta = xi/omega_c inside (zeta_lo, zeta_hi).

    zeta_hi may be inf.  The fraction of the full integral is returned;
    windows partition additively.
    """
    lo, hi = window
    if lo < 0.0 or not hi > lo:
        raise ValueError("window must satisfy 0 <= zeta_lo < zeta_hi")
    rel_tol = tol.quadrature_rel_tol
    full, _ = _double_integral(model, geometry, rel_tol, 0.0, None,
                               _free_energy_integrand)
    part, _ = _double_integral(model, geometry, rel_tol, lo,
                               None if math.isinf(hi) else hi,
                               _free_energy_integrand)
    return part.value / full.value
