import math

import numpy as np
import pytest

from helpers import random_x_state
from squeezedpair import BathParams, CollectivePopulations, DensityMatrix


class TestBathParams:
    def test_quantum_bound_accepts_max_squeezing(self):
        bath = BathParams.max_squeezed(0.3)
        assert abs(bath.m_abs - math.sqrt(0.3 * 1.3)) < 1e-15

    def test_quantum_bound_rejects_excess_correlation(self):
        with pytest.raises(ValueError, match="unphysical"):
            BathParams(n_mean=0.3, m_abs=0.7)

    def test_negative_parameters_rejected(self):
        with pytest.raises(ValueError):
            BathParams(n_mean=-0.1)
        with pytest.raises(ValueError):
            BathParams(n_mean=1.0, m_abs=-0.2)

    def test_phase_wraps_into_principal_interval(self):
        bath = BathParams(1.0, 0.5, phi_s=-1.0)
        assert 0.0 <= bath.phi_s < 2.0 * math.pi
        assert abs(bath.phi_s - (2.0 * math.pi - 1.0)) < 1e-12

    def test_vacuum_is_valid(self):
        bath = BathParams()
        assert bath.n_mean == bath.m_abs == 0.0


class TestDensityMatrix:
    def test_named_states_are_normalized(self):
        for dm in (DensityMatrix.ground(), DensityMatrix.doubly_excited(),
                   DensityMatrix.symmetric(), DensityMatrix.antisymmetric(),
                   DensityMatrix.maximally_mixed(), DensityMatrix.bell_plus(),
                   DensityMatrix.bell_minus()):
            assert dm.trace_defect() < 1e-15
            assert dm.hermiticity_defect() < 1e-15
            assert dm.min_eigenvalue() > -1e-15

    def test_construction_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.diag([0.5, 0.2, 0.1, 0.1]))

    def test_construction_rejects_non_hermitian(self):
        m = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
        m[0, 1] = 0.5
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(m)

    def test_construction_rejects_negative_eigenvalue(self):
        m = np.diag([1.2, -0.2, 0.0, 0.0]).astype(complex)
        with pytest.raises(ValueError, match="positive semidefinite"):
            DensityMatrix(m)

    def test_collective_accessors_on_symmetric_state(self):
        dm = DensityMatrix.symmetric()
        assert abs(dm.rho_ss - 1.0) < 1e-15
        assert abs(dm.rho_aa) < 1e-15
        assert abs(dm.rho_sa) < 1e-15

    def test_collective_accessors_on_antisymmetric_state(self):
        dm = DensityMatrix.antisymmetric()
        assert abs(dm.rho_aa - 1.0) < 1e-15
        assert abs(dm.rho_ss) < 1e-15

    def test_rho_u_tracks_the_phase(self):
        dm = DensityMatrix.bell_plus()
        assert abs(dm.rho_u(0.0) - 1.0) < 1e-15
        assert abs(dm.rho_u(math.pi) + 1.0) < 1e-15
        assert abs(dm.rho_u(math.pi / 2)) < 1e-15

    def test_x_defect_flags_off_block_entries(self, rng):
        dm = DensityMatrix(random_x_state(rng))
        assert dm.is_x_structured(1e-12)
        m = dm.matrix.copy()
        m[0, 2] = m[2, 0] = 1e-3
        spoiled = DensityMatrix(m, check=False)
        assert not spoiled.is_x_structured(1e-9)
        assert abs(spoiled.x_defect() - 1e-3) < 1e-15


class TestCollectivePopulations:
    def test_trace_closure(self):
        pops = CollectivePopulations(0.1, 0.2, 0.3, 0.05)
        assert abs(pops.rho_gg - 0.4) < 1e-15

    def test_roundtrip_through_matrix(self, rng):
        for _ in range(50):
            raw = rng.dirichlet(np.ones(4))
            u_max = 2.0 * math.sqrt(raw[0] * raw[1])
            pops = CollectivePopulations(raw[1], raw[2], raw[3],
                                         rng.uniform(-u_max, u_max))
            phi = rng.uniform(0.0, 2.0 * math.pi)
            back = CollectivePopulations.from_density_matrix(
                pops.to_density_matrix(phi), phi)
            assert np.abs(pops.as_array() - back.as_array()).max() < 1e-12

    def test_validate_rejects_oversized_coherence(self):
        with pytest.raises(ValueError, match="coherence bound"):
            CollectivePopulations(0.25, 0.25, 0.25, 0.9).validate()

    def test_validate_rejects_population_out_of_range(self):
        with pytest.raises(ValueError):
            CollectivePopulations(1.2, 0.0, 0.0, 0.0).validate()

    def test_to_density_matrix_enforces_positivity(self):
        bad = CollectivePopulations(0.25, 0.25, 0.25, 0.9)
        with pytest.raises(ValueError):
            bad.to_density_matrix()

    def test_matrix_layout_splits_one_excitation_block_evenly(self):
        pops = CollectivePopulations(0.1, 0.3, 0.1, 0.0)
        m = pops.to_density_matrix().matrix
        assert abs(m[2, 2] - 0.2) < 1e-15
        assert abs(m[3, 3] - 0.2) < 1e-15
        assert abs(m[2, 3] - 0.1) < 1e-15
