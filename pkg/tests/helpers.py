"""Shared random-state and parameter-draw builders for the test suite."""

import math

import numpy as np

from squeezedpair import AtomPairConfig, BathParams


def random_x_state(rng) -> np.ndarray:
    """Random valid density matrix with the two-block structure."""
    outer = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    inner = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = np.zeros((4, 4), dtype=complex)
    m[:2, :2] = outer @ outer.conj().T
    m[2:, 2:] = inner @ inner.conj().T
    return m / np.trace(m).real


def random_density_matrix(rng) -> np.ndarray:
    """Random full-rank density matrix without special structure."""
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = a @ a.conj().T
    return m / np.trace(m).real


def random_bath(rng, n_lo=0.02, n_hi=2.0) -> BathParams:
    """Physical reservoir with |M| anywhere up to the quantum bound."""
    n = rng.uniform(n_lo, n_hi)
    m_abs = rng.uniform(0.0, 1.0) * math.sqrt(n * (n + 1.0))
    return BathParams(n, m_abs, rng.uniform(0.0, 2.0 * math.pi))


def random_cfg(rng, r_lo=0.05, r_hi=3.0, delta=0.0) -> AtomPairConfig:
    return AtomPairConfig(1.0, rng.uniform(r_lo, r_hi), 0.0, delta)
