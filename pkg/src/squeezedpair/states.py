"""Basis conventions and shared state containers.

Every 4x4 matrix in this package uses the product-basis order

    0 |gg>,   1 |ee>,   2 |g1 e2>,   3 |e1 g2>

which makes the steady-state two-block ("X") structure block diagonal:
a {gg, ee} block carrying the two-photon coherence and a one-excitation
{ge, eg} block.  The collective one-excitation states live in the second
block,

    |s> = (|ge> + |eg>) / sqrt(2),    |a> = (|eg> - |ge>) / sqrt(2).
"""

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

BASIS_LABELS = ("gg", "ee", "ge", "eg")


@dataclass(frozen=True)
class BathParams:
    """Broadband squeezed reservoir seen by both atoms.

    n_mean is the mean photon number, m_abs the magnitude of the
    two-photon correlation (physical only for |M|^2 <= N(N+1), equality
    for a minimum-uncertainty reservoir), phi_s the squeezing phase and
    carrier_detuning_over_gamma the offset of the squeezing carrier from
    the mean atomic frequency, in units of the single-atom rate.
    """

    n_mean: float = 0.0
    m_abs: float = 0.0
    phi_s: float = 0.0
    carrier_detuning_over_gamma: float = 0.0

    def __post_init__(self):
        if self.n_mean < 0:
            raise ValueError(f"n_mean must be >= 0, got {self.n_mean}")
        if self.m_abs < 0:
            raise ValueError(f"m_abs must be >= 0, got {self.m_abs}")
        limit = math.sqrt(self.n_mean * (self.n_mean + 1.0))
        if self.m_abs > limit + 1e-12:
            raise ValueError(
                f"unphysical bath: |M| = {self.m_abs} exceeds "
                f"sqrt(N(N+1)) = {limit}")
        object.__setattr__(self, "phi_s", self.phi_s % TWO_PI)

    @classmethod
    def max_squeezed(cls, n_mean, phi_s=0.0, carrier_detuning_over_gamma=0.0):
        """Minimum-uncertainty reservoir, |M| = sqrt(N(N+1))."""
        return cls(n_mean, math.sqrt(n_mean * (n_mean + 1.0)), phi_s,
                   carrier_detuning_over_gamma)


class DensityMatrix:
    """4x4 two-qubit density matrix in the product-basis order above."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, check=True, herm_tol=1e-8, trace_tol=1e-8,
                 psd_tol=1e-8):
        m = np.array(matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if check:
            herm = np.abs(m - m.T.conj()).max()
            if herm > herm_tol:
                raise ValueError(f"matrix is not Hermitian (defect {herm:.2e})")
            tr = abs(np.trace(m).real - 1.0)
            if tr > trace_tol:
                raise ValueError(f"trace differs from 1 by {tr:.2e}")
            lo = np.linalg.eigvalsh(0.5 * (m + m.T.conj())).min()
            if lo < -psd_tol:
                raise ValueError(
                    f"matrix is not positive semidefinite (min eig {lo:.2e})")
        self.matrix = m

    # ------------------------------------------------------------------
    # constructors for common states
    @classmethod
    def ground(cls):
        return cls(np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex), check=False)

    @classmethod
    def doubly_excited(cls):
        return cls(np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex), check=False)

    @classmethod
    def symmetric(cls):
        m = np.zeros((4, 4), dtype=complex)
        m[2:, 2:] = 0.5
        return cls(m, check=False)

    @classmethod
    def antisymmetric(cls):
        m = np.zeros((4, 4), dtype=complex)
        m[2, 2] = m[3, 3] = 0.5
        m[2, 3] = m[3, 2] = -0.5
        return cls(m, check=False)

    @classmethod
    def maximally_mixed(cls):
        return cls(0.25 * np.eye(4, dtype=complex), check=False)

    @classmethod
    def bell_plus(cls):
        """(|gg> + |ee>)/sqrt(2) as a projector."""
        m = np.zeros((4, 4), dtype=complex)
        m[:2, :2] = 0.5
        return cls(m, check=False)

    @classmethod
    def bell_minus(cls):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[1, 1] = 0.5
        m[0, 1] = m[1, 0] = -0.5
        return cls(m, check=False)

    # ------------------------------------------------------------------
    # element access, product basis
    @property
    def rho_gg(self) -> float:
        return self.matrix[0, 0].real

    @property
    def rho_ee(self) -> float:
        return self.matrix[1, 1].real

    @property
    def rho_ge(self) -> complex:
        """Two-photon coherence <gg| rho |ee>."""
        return self.matrix[0, 1]

    # collective one-excitation elements
    @property
    def rho_ss(self) -> float:
        m = self.matrix
        return 0.5 * (m[2, 2] + m[3, 3] + m[2, 3] + m[3, 2]).real

    @property
    def rho_aa(self) -> float:
        m = self.matrix
        return 0.5 * (m[2, 2] + m[3, 3] - m[2, 3] - m[3, 2]).real

    @property
    def rho_sa(self) -> complex:
        m = self.matrix
        return 0.5 * (m[2, 3] - m[3, 2] - m[2, 2] + m[3, 3])

    def rho_u(self, phi_s=0.0) -> float:
        """Phase-aligned two-photon coherence, rho_eg e^-i*phi + rho_ge e^i*phi."""
        return 2.0 * (self.matrix[0, 1] * np.exp(1j * phi_s)).real

    # ------------------------------------------------------------------
    # diagnostics
    def trace_defect(self) -> float:
        return abs(np.trace(self.matrix).real - 1.0)

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.T.conj()).max())

    def min_eigenvalue(self) -> float:
        h = 0.5 * (self.matrix + self.matrix.T.conj())
        return float(np.linalg.eigvalsh(h).min())

    def x_defect(self) -> float:
        """Largest magnitude among the entries a two-block state forbids."""
        m = self.matrix
        return float(max(np.abs(m[:2, 2:]).max(), np.abs(m[2:, :2]).max()))

    def is_x_structured(self, tol=1e-9) -> bool:
        return self.x_defect() <= tol

    def __repr__(self):
        return f"DensityMatrix({self.matrix!r})"


@dataclass(frozen=True)
class CollectivePopulations:
    """Slow variables of the collective description.

    rho_u is the phase-aligned two-photon coherence combination; the
    ground population is carried implicitly through the trace.
    """

    rho_ee: float
    rho_ss: float
    rho_aa: float
    rho_u: float

    @property
    def rho_gg(self) -> float:
        return 1.0 - self.rho_ee - self.rho_ss - self.rho_aa

    def validate(self, tol=1e-9):
        for name in ("rho_gg", "rho_ee", "rho_ss", "rho_aa"):
            v = getattr(self, name)
            if not -tol <= v <= 1.0 + tol:
                raise ValueError(f"{name} = {v} outside [0, 1]")
        bound = 2.0 * math.sqrt(max(self.rho_gg, 0.0) * max(self.rho_ee, 0.0))
        if abs(self.rho_u) > bound + tol:
            raise ValueError(
                f"|rho_u| = {abs(self.rho_u)} violates the coherence bound "
                f"2 sqrt(rho_gg rho_ee) = {bound}")
        return self

    def as_array(self) -> np.ndarray:
        return np.array([self.rho_ee, self.rho_ss, self.rho_aa, self.rho_u])

    @classmethod
    def from_array(cls, y):
        return cls(float(y[0]), float(y[1]), float(y[2]), float(y[3]))

    @classmethod
    def from_density_matrix(cls, dm: DensityMatrix, phi_s=0.0):
        return cls(dm.rho_ee, dm.rho_ss, dm.rho_aa, dm.rho_u(phi_s))

    def to_density_matrix(self, phi_s=0.0, check=True) -> DensityMatrix:
        """Two-block matrix with the stationary phase layout.

        The one-excitation block is split evenly between |ge> and |eg>
        with no s-a coherence; the two-photon coherence carries the
        phase e^-i*phi_s so that rho_u reads back as stored.
        """
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = self.rho_gg
        m[1, 1] = self.rho_ee
        half = 0.5 * (self.rho_ss + self.rho_aa)
        skew = 0.5 * (self.rho_ss - self.rho_aa)
        m[2, 2] = m[3, 3] = half
        m[2, 3] = m[3, 2] = skew
        m[0, 1] = 0.5 * self.rho_u * np.exp(-1j * phi_s)
        m[1, 0] = np.conj(m[0, 1])
        return DensityMatrix(m, check=check)
