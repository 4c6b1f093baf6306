"""Entanglement and state-quality measures for the two-atom system.

Concurrence comes in three flavours that must agree on the states this
package produces: the general Wootters eigenvalue construction, the
closed form for two-block (X) matrices, and analytic expressions
evaluated directly on the stationary solutions.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import steady_identical, steady_nonidentical
from .states import BathParams, DensityMatrix


class XStructureError(ValueError):
    """Input lacks the two-block structure; use concurrence_general."""


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


# spin flip of both qubits, sigma_x x sigma_x, in the (gg, ee, ge, eg) order
_FLIP = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0],
], dtype=complex)


def _sqrtm_psd(mat):
    w, v = np.linalg.eigh(mat)
    # eigenvalues within roundoff below zero are clamped before the root
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.T.conj()


def concurrence_general(rho, psd_tol=1e-8) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    Defined through the descending square roots of the eigenvalues of
    rho (sx x sx) rho* (sx x sx), with conjugation in the product basis.
    Those roots are computed as the singular values of
    sqrt(rho) sqrt(rho_flipped), which sidesteps the ill-conditioned
    non-Hermitian eigenproblem and keeps the three concurrence routes in
    agreement at machine precision.
    """
    m = _as_matrix(rho)
    lo = np.linalg.eigvalsh(0.5 * (m + m.T.conj())).min()
    if lo < -psd_tol:
        raise ValueError(
            f"matrix is not positive semidefinite (min eig {lo:.2e})")
    flipped = _FLIP @ m.conj() @ _FLIP
    roots = np.linalg.svd(_sqrtm_psd(m) @ _sqrtm_psd(flipped),
                          compute_uv=False)
    return float(max(0.0, 2.0 * roots[0] - roots.sum()))


def concurrence_candidates(rho) -> tuple[float, float]:
    """Signed candidate values for a two-block matrix.

    The first compares the two-photon coherence with the one-excitation
    populations, the second the one-excitation coherence with the outer
    populations; the concurrence is the positive part of the larger.
    """
    m = _as_matrix(rho)
    c1 = 2.0 * (abs(m[0, 1]) - math.sqrt(max((m[2, 2] * m[3, 3]).real, 0.0)))
    c2 = 2.0 * (abs(m[2, 3]) - math.sqrt(max((m[0, 0] * m[1, 1]).real, 0.0)))
    return c1, c2


def concurrence_xstate(rho, structure_tol=1e-9) -> float:
    """Closed-form concurrence for a two-block (X) density matrix."""
    if isinstance(rho, DensityMatrix):
        defect = rho.x_defect()
    else:
        m = _as_matrix(rho)
        defect = max(np.abs(m[:2, 2:]).max(), np.abs(m[2:, :2]).max())
    if defect > structure_tol:
        raise XStructureError(
            f"off-block entries up to {defect:.2e} exceed {structure_tol:.0e}; "
            f"use concurrence_general for such states")
    c1, c2 = concurrence_candidates(rho)
    return max(0.0, c1, c2)


def c1_identical(gamma12: float, bath: BathParams) -> float:
    """Signed stationary concurrence candidate for equal-frequency atoms,
    |rho_u| - (rho_ss + rho_aa) on the closed-form stationary state."""
    pops = steady_identical(gamma12, bath)
    return abs(pops.rho_u) - (pops.rho_ss + pops.rho_aa)


def c1_nonidentical(gamma12: float, bath: BathParams) -> float:
    """Signed stationary concurrence candidate in the secular limit."""
    pops = steady_nonidentical(gamma12, bath)
    return abs(pops.rho_u) - (pops.rho_ss + pops.rho_aa)


def fidelities(rho, phi_s=0.0) -> tuple[float, float]:
    """Overlaps with the phase-aligned Bell pair (|gg> +- |ee>)/sqrt(2).

    Their sum equals the population of the outer block.
    """
    dm = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    outer = dm.rho_gg + dm.rho_ee
    u = dm.rho_u(phi_s)
    return 0.5 * (outer + u), 0.5 * (outer - u)


def purity(rho) -> float:
    """Tr(rho^2), from 1/4 for the maximally mixed state to 1."""
    m = _as_matrix(rho)
    return float(np.trace(m @ m).real)


def tc_parameter(bath: BathParams) -> float:
    """Two-photon correlation normalized to the intensity, |M|/N.

    Greater than one only for nonclassical reservoirs.  At N = 0 the
    ratio is undefined and reported as inf (nan when |M| is zero too).
    """
    if bath.n_mean == 0:
        return math.inf if bath.m_abs > 0 else math.nan
    return bath.m_abs / bath.n_mean


@dataclass(frozen=True)
class EntanglementReport:
    """Bundle of the entanglement and quality measures of one state."""

    concurrence: float
    c1: float
    c2: float
    fidelity_plus: float
    fidelity_minus: float
    purity: float
    tc: float


def entanglement_report(rho, bath: BathParams) -> EntanglementReport:
    """Evaluate every measure on one state with the bath's phase."""
    dm = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    c1, c2 = concurrence_candidates(dm)
    f_plus, f_minus = fidelities(dm, bath.phi_s)
    return EntanglementReport(
        concurrence=concurrence_general(dm),
        c1=float(c1),
        c2=float(c2),
        fidelity_plus=float(f_plus),
        fidelity_minus=float(f_minus),
        purity=purity(dm),
        tc=tc_parameter(bath),
    )


def optimal_photon_number(gamma12: float = 1.0) -> tuple[float, float]:
    """Photon number maximizing the equal-atom stationary concurrence.

    Golden-section search of the minimum-uncertainty reservoir curve.
    Returns the maximizing mean photon number and the concurrence there.
    """
    res = minimize_scalar(
        lambda n: -c1_identical(gamma12, BathParams.max_squeezed(n)),
        bracket=(1e-3, 0.05, 0.8), method="golden",
        options={"xtol": 1e-10})
    return float(res.x), float(-res.fun)
