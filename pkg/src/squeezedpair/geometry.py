"""Distance dependence of the collective decay and the dipole-dipole shift.

Two atoms sharing the vacuum acquire a cross damping rate and a coherent
exchange interaction.  Both depend only on the separation measured in
resonant wavelengths and on the angle between the (common) transition
dipole and the interatomic axis.  All rates returned here are quoted in
units of the single-atom decay rate.
"""

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AtomPairConfig:
    """Geometry and spectroscopy of the atom pair.

    gamma is the single-atom decay rate and serves as the global rate
    unit; it only matters for labelling output.  r12_over_lambda is the
    interatomic separation in resonant wavelengths, mu_hat_dot_r_hat the
    cosine of the angle between the dipole moment and the interatomic
    axis (0 = perpendicular dipoles), and delta_over_gamma half the
    transition-frequency splitting of the two atoms.
    """

    gamma: float = 1.0
    r12_over_lambda: float = 0.05
    mu_hat_dot_r_hat: float = 0.0
    delta_over_gamma: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.r12_over_lambda < 0:
            raise ValueError(
                f"r12_over_lambda must be >= 0, got {self.r12_over_lambda}")
        if abs(self.mu_hat_dot_r_hat) > 1:
            raise ValueError(
                f"mu_hat_dot_r_hat must lie in [-1, 1], got {self.mu_hat_dot_r_hat}")
        if self.delta_over_gamma < 0:
            raise ValueError(
                f"delta_over_gamma must be >= 0, got {self.delta_over_gamma}")


# Below this the direct formula loses ~x^-2 digits to cancellation, so a
# truncated small-argument series (error O(x^6)) takes over.
_SERIES_CUTOFF = 1e-2


def gamma12(cfg: AtomPairConfig) -> float:
    """Collective damping rate over the single-atom rate.

    Approaches 1 in the small-sample limit; zero separation is answered
    with that limit rather than rejected.
    """
    x = TWO_PI * cfg.r12_over_lambda
    mu2 = cfg.mu_hat_dot_r_hat ** 2
    if x < _SERIES_CUTOFF:
        return 1.5 * ((1.0 - mu2) * (1.0 - x * x / 6.0 + x ** 4 / 120.0)
                      + (1.0 - 3.0 * mu2) * (-1.0 / 3.0 + x * x / 30.0
                                             - x ** 4 / 840.0))
    s, c = math.sin(x), math.cos(x)
    return 1.5 * ((1.0 - mu2) * s / x
                  + (1.0 - 3.0 * mu2) * (c / x ** 2 - s / x ** 3))


def omega12(cfg: AtomPairConfig) -> float:
    """Dipole-dipole exchange shift over the single-atom rate.

    Diverges like 1/x^3 at short range, so zero separation is rejected.
    """
    if cfg.r12_over_lambda == 0:
        raise ValueError(
            "dipole-dipole shift diverges at zero separation; "
            "use a positive r12_over_lambda")
    x = TWO_PI * cfg.r12_over_lambda
    mu2 = cfg.mu_hat_dot_r_hat ** 2
    s, c = math.sin(x), math.cos(x)
    return 0.75 * (-(1.0 - mu2) * c / x
                   + (1.0 - 3.0 * mu2) * (s / x ** 2 + c / x ** 3))
