"""Reduced four-variable dynamics and its closed-form stationary points.

For atoms driven by a broadband squeezed reservoir the populations of the
collective states and the phase-aligned two-photon coherence close on
themselves.  Two variants are covered: equal-frequency atoms, and the
secular limit of strongly detuned atoms where the symmetric and
antisymmetric states damp at the same rate.  Time is measured in units of
1/Gamma throughout.
"""

import numpy as np
from scipy.integrate import solve_ivp

from .states import BathParams, CollectivePopulations


def rhs_identical(state: CollectivePopulations, gamma12: float,
                  bath: BathParams) -> np.ndarray:
    """Time derivatives (d rho_ee, d rho_ss, d rho_aa, d rho_u) for
    equal-frequency atoms."""
    g, n, m = gamma12, bath.n_mean, bath.m_abs
    ee, ss, aa, u = state.rho_ee, state.rho_ss, state.rho_aa, state.rho_u
    return np.array([
        -2.0 * (n + 1.0) * ee + n * ((1.0 + g) * ss + (1.0 - g) * aa)
        + g * m * u,
        (1.0 + g) * (n - (3.0 * n + 1.0) * ss - n * aa + ee - m * u),
        (1.0 - g) * (n - (3.0 * n + 1.0) * aa - n * ss + ee + m * u),
        2.0 * g * m - (2.0 * n + 1.0) * u
        - 2.0 * m * ((1.0 + 2.0 * g) * ss - (1.0 - 2.0 * g) * aa),
    ])


def rhs_nonidentical(state: CollectivePopulations, gamma12: float,
                     bath: BathParams) -> np.ndarray:
    """Time derivatives in the secular (large splitting) limit.

    Total on any state; physically meaningful when the splitting is much
    larger than the decay rate.
    """
    g, n, m = gamma12, bath.n_mean, bath.m_abs
    ee, ss, aa, u = state.rho_ee, state.rho_ss, state.rho_aa, state.rho_u
    return np.array([
        -2.0 * (n + 1.0) * ee + n * (ss + aa) + g * m * u,
        n - (3.0 * n + 1.0) * ss - n * aa + ee - g * m * u,
        n - (3.0 * n + 1.0) * aa - n * ss + ee - g * m * u,
        2.0 * g * m - (2.0 * n + 1.0) * u - 4.0 * g * m * (ss + aa),
    ])


def steady_identical(gamma12: float, bath: BathParams) -> CollectivePopulations:
    """Closed-form stationary point for equal-frequency atoms."""
    g, n, m = gamma12, bath.n_mean, bath.m_abs
    w = 2.0 * n + 1.0
    den = w ** 4 - 4.0 * m ** 2 * (w ** 2 - g ** 2)
    if den <= 0:
        raise ValueError(
            f"stationary denominator {den} is not positive; the bath "
            f"parameters are outside the physical domain")
    squash = w ** 2 - 4.0 * m ** 2
    return CollectivePopulations(
        rho_ee=(n ** 2 * squash + m ** 2 * g ** 2) / den,
        rho_ss=(n * (n + 1.0) * squash + m ** 2 * g * (g - 2.0)) / den,
        rho_aa=(n * (n + 1.0) * squash + m ** 2 * g * (g + 2.0)) / den,
        rho_u=2.0 * w * m * g / den,
    )


def steady_nonidentical(gamma12: float, bath: BathParams) -> CollectivePopulations:
    """Closed-form stationary point in the secular limit.

    The symmetric and antisymmetric populations come out equal here,
    which is what makes strongly detuned atoms the better entanglement
    source.
    """
    g, n, m = gamma12, bath.n_mean, bath.m_abs
    w = 2.0 * n + 1.0
    k = w ** 2 - 4.0 * m ** 2 * g ** 2
    if k <= 0:
        raise ValueError(
            f"stationary denominator {k} is not positive; the bath "
            f"parameters are outside the physical domain")
    pop = 0.25 * (1.0 - 1.0 / k)
    return CollectivePopulations(
        rho_ee=0.25 * ((w - 2.0) / w + 1.0 / k),
        rho_ss=pop,
        rho_aa=pop,
        rho_u=2.0 * m * g / (w * k),
    )


def _affine_parts(rhs, gamma12, bath):
    # both reduced systems are affine, dx/dt = A x + b; probe them once
    zero = CollectivePopulations(0.0, 0.0, 0.0, 0.0)
    b = rhs(zero, gamma12, bath)
    a = np.empty((4, 4))
    for k in range(4):
        unit = CollectivePopulations.from_array(np.eye(4)[k])
        a[:, k] = rhs(unit, gamma12, bath) - b
    return a, b


def relax_to_steady(variant: str, gamma12: float, bath: BathParams,
                    start: CollectivePopulations | None = None,
                    rtol=1e-12) -> CollectivePopulations:
    """Integrate the reduced system until it has settled.

    The horizon is taken as 30 relaxation times of the slowest mode of
    the affine system (clamped to [50, 2e4] in units of 1/Gamma), which
    leaves the numerical limit far below 1e-8 of the fixed point for
    damped modes.  Modes with exactly zero rate (the ideal small-sample
    limit) simply retain their initial content.
    """
    rhs = {"identical": rhs_identical, "nonidentical": rhs_nonidentical}[variant]
    a, _b = _affine_parts(rhs, gamma12, bath)
    rates = np.abs(np.linalg.eigvals(a).real)
    rates = rates[rates > 1e-9]
    slowest = rates.min() if rates.size else 1.0
    horizon = min(max(30.0 / slowest, 50.0), 2e4)
    y0 = (start or CollectivePopulations(0.0, 0.0, 0.0, 0.0)).as_array()
    sol = solve_ivp(
        lambda _t, y: rhs(CollectivePopulations.from_array(y), gamma12, bath),
        (0.0, horizon), y0, method="DOP853", rtol=rtol, atol=1e-14)
    if not sol.success:
        raise RuntimeError(f"reduced-system integration failed: {sol.message}")
    return CollectivePopulations.from_array(sol.y[:, -1])
