"""Two collectively damped two-level atoms in a broadband squeezed vacuum.

The package computes the stationary state of the pair three independent
ways (closed forms, reduced four-variable dynamics, full 16x16 generator)
and quantifies the entanglement the reservoir's two-photon correlations
leave behind.
"""

from .geometry import AtomPairConfig, gamma12, omega12
from .states import BathParams, CollectivePopulations, DensityMatrix
from .lindblad import (
    DegenerateSteadyStateError,
    Liouvillian,
    PropagationError,
    build_liouvillian,
    devectorize,
    propagate,
    propagate_path,
    steady_state,
    vectorize,
)
from .dynamics import (
    relax_to_steady,
    rhs_identical,
    rhs_nonidentical,
    steady_identical,
    steady_nonidentical,
)
from .metrics import (
    EntanglementReport,
    XStructureError,
    c1_identical,
    c1_nonidentical,
    concurrence_candidates,
    concurrence_general,
    concurrence_xstate,
    entanglement_report,
    fidelities,
    optimal_photon_number,
    purity,
    tc_parameter,
)

__version__ = "0.1.0"

__all__ = [
    "AtomPairConfig",
    "BathParams",
    "CollectivePopulations",
    "DegenerateSteadyStateError",
    "DensityMatrix",
    "EntanglementReport",
    "Liouvillian",
    "PropagationError",
    "XStructureError",
    "build_liouvillian",
    "c1_identical",
    "c1_nonidentical",
    "concurrence_candidates",
    "concurrence_general",
    "concurrence_xstate",
    "devectorize",
    "entanglement_report",
    "fidelities",
    "gamma12",
    "omega12",
    "optimal_photon_number",
    "propagate",
    "propagate_path",
    "purity",
    "relax_to_steady",
    "rhs_identical",
    "rhs_nonidentical",
    "steady_identical",
    "steady_nonidentical",
    "steady_state",
    "tc_parameter",
    "vectorize",
    "__version__",
]
