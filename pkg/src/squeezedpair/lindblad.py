"""Full 16x16 generator of the two-atom master equation.

The generator is written in the frame rotating at the squeezing carrier
frequency, where the two-photon terms are stationary and the atomic
frequencies enter only through their detunings from the carrier.  Density
matrices are column-stacked into length-16 vectors, so a superoperator
term A . B maps to kron(B.T, A).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .geometry import AtomPairConfig, gamma12 as _gamma12, omega12 as _omega12
from .states import BathParams, DensityMatrix


class DegenerateSteadyStateError(RuntimeError):
    """Null space of the generator is not one dimensional within tolerance."""


class PropagationError(RuntimeError):
    """Time integration failed; carries the last time reached."""

    def __init__(self, message, t_last):
        super().__init__(message)
        self.t_last = t_last


# ----------------------------------------------------------------------
# two-atom operators in the product order (gg, ee, ge, eg)

def _permuted(op):
    # kron index order is (gg, ge, eg, ee); move to the package order
    perm = (0, 3, 1, 2)
    return op[np.ix_(perm, perm)]


_SP = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)   # |e><g|
_SZ = np.diag([-0.5, 0.5]).astype(complex)
_I2 = np.eye(2, dtype=complex)

S1_PLUS = _permuted(np.kron(_SP, _I2))
S2_PLUS = _permuted(np.kron(_I2, _SP))
S1_MINUS = S1_PLUS.T.conj()
S2_MINUS = S2_PLUS.T.conj()
S1_Z = _permuted(np.kron(_SZ, _I2))
S2_Z = _permuted(np.kron(_I2, _SZ))
_I4 = np.eye(4, dtype=complex)

_RAISE = (S1_PLUS, S2_PLUS)
_LOWER = (S1_MINUS, S2_MINUS)


def vectorize(rho) -> np.ndarray:
    """Column-stack a 4x4 matrix into a 16-vector."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return m.reshape(-1, order="F")


def devectorize(v) -> np.ndarray:
    """Inverse of vectorize."""
    return np.asarray(v).reshape(4, 4, order="F")


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Generator matrix plus the parameters it was built from."""

    matrix: np.ndarray = field(repr=False)
    cfg: AtomPairConfig
    bath: BathParams
    gamma12: float
    omega12: float


def build_liouvillian(cfg: AtomPairConfig, bath: BathParams,
                      gamma12=None, omega12=None) -> Liouvillian:
    """Assemble the rotating-frame generator.

    The collective rates default to their geometric values; passing
    gamma12 or omega12 explicitly overrides them (useful for idealized
    limits that no finite separation realizes exactly).  Atomic
    detunings from the carrier are -delta - d_s and +delta - d_s with
    d_s the carrier detuning, so the default carrier sits midway
    between the two transition frequencies.

    Parameters
    ----------
    cfg : AtomPairConfig
    bath : BathParams
    gamma12, omega12 : float, optional
        Dimensionless overrides for the collective damping and the
        exchange shift.

    Returns
    -------
    Liouvillian
    """
    g12 = _gamma12(cfg) if gamma12 is None else float(gamma12)
    om = _omega12(cfg) if omega12 is None else float(omega12)
    n = bath.n_mean
    m_corr = bath.m_abs * np.exp(1j * bath.phi_s)
    rates = np.array([[1.0, g12], [g12, 1.0]])

    d1 = -cfg.delta_over_gamma - bath.carrier_detuning_over_gamma
    d2 = +cfg.delta_over_gamma - bath.carrier_detuning_over_gamma
    ham = (d1 * S1_Z + d2 * S2_Z
           + om * (S1_PLUS @ S2_MINUS + S2_PLUS @ S1_MINUS))

    liou = -1j * (np.kron(_I4, ham) - np.kron(ham.T, _I4))
    for i in range(2):
        for j in range(2):
            g = rates[i, j]
            down = _RAISE[i] @ _LOWER[j]
            liou -= 0.5 * g * (1.0 + n) * (
                np.kron(down.T, _I4) + np.kron(_I4, down)
                - 2.0 * np.kron(_RAISE[i].T, _LOWER[j]))
            up = _LOWER[i] @ _RAISE[j]
            liou -= 0.5 * g * n * (
                np.kron(up.T, _I4) + np.kron(_I4, up)
                - 2.0 * np.kron(_LOWER[i].T, _RAISE[j]))
            two_up = _RAISE[i] @ _RAISE[j]
            liou += 0.5 * g * m_corr * (
                np.kron(two_up.T, _I4) + np.kron(_I4, two_up)
                - 2.0 * np.kron(_RAISE[i].T, _RAISE[j]))
            two_down = _LOWER[i] @ _LOWER[j]
            liou += 0.5 * g * np.conj(m_corr) * (
                np.kron(two_down.T, _I4) + np.kron(_I4, two_down)
                - 2.0 * np.kron(_LOWER[i].T, _LOWER[j]))
    return Liouvillian(liou, cfg, bath, g12, om)


def propagate(liou: Liouvillian, rho0: DensityMatrix, t: float,
              rtol=1e-10, atol=1e-12) -> DensityMatrix:
    """Evolve a state for a duration t (units of 1/Gamma)."""
    if t < 0:
        raise ValueError(f"propagation time must be >= 0, got {t}")
    if t == 0:
        return rho0
    return propagate_path(liou, rho0, [t], rtol=rtol, atol=atol)[0]


def propagate_path(liou: Liouvillian, rho0: DensityMatrix, times,
                   rtol=1e-10, atol=1e-12):
    """Evolve a state and sample it at the given increasing times.

    Uses an adaptive high-order Runge-Kutta scheme on the vectorized
    state.  Returns one DensityMatrix per requested time; a time of 0
    returns the input unchanged.
    """
    times = list(times)
    if any(t < 0 for t in times):
        raise ValueError("sample times must be >= 0")
    if sorted(times) != times:
        raise ValueError("sample times must be increasing")
    positive = [t for t in times if t > 0]
    out = {0.0: rho0}
    if positive:
        mat = liou.matrix
        sol = solve_ivp(lambda _t, y: mat @ y, (0.0, positive[-1]),
                        vectorize(rho0), method="DOP853", t_eval=positive,
                        rtol=rtol, atol=atol)
        if not sol.success:
            reached = sol.t[-1] if sol.t.size else 0.0
            raise PropagationError(
                f"integration stalled at t = {reached}: {sol.message}",
                t_last=reached)
        for t, col in zip(positive, sol.y.T):
            rho = devectorize(col)
            rho = 0.5 * (rho + rho.T.conj())
            out[t] = DensityMatrix(rho, check=False)
    return [out[t] if t in out else out[0.0] for t in times]


def steady_state(liou: Liouvillian, rel_gap=1e-8) -> DensityMatrix:
    """Trace-one null vector of the generator.

    The null space is extracted from a singular value decomposition,
    which is robust for the non-Hermitian generator.  A second singular
    value below rel_gap times the largest means the stationary state is
    not unique (e.g. the ideal small-sample limit, where the
    antisymmetric population is conserved); in that case the caller can
    fall back to propagate with an explicit horizon and initial state.
    """
    u, s, vh = np.linalg.svd(liou.matrix)
    if s[-2] <= rel_gap * s[0]:
        raise DegenerateSteadyStateError(
            f"generator null space is degenerate (second singular value "
            f"{s[-2]:.2e} vs largest {s[0]:.2e}); the stationary state "
            f"depends on the initial condition")
    rho = devectorize(vh[-1].conj())
    rho = 0.5 * (rho + rho.T.conj())
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise DegenerateSteadyStateError("null vector is traceless")
    return DensityMatrix(rho / tr)
