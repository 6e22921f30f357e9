"""Two two-level atoms in a single-mode ring cavity, with quantized motion.

Closed-form dynamics of the coupled atom-pair / cavity system: dressed
blocks and evolution amplitudes (:mod:`ringcavity.dressed`), photon-number
statistics of the drive (:mod:`ringcavity.field`), the recoil-induced
decoherence factor and relative-position density matrices
(:mod:`ringcavity.spatial`), their phase-space picture
(:mod:`ringcavity.wigner`), and the disentanglement of the internal states
(:mod:`ringcavity.entanglement`).

Conventions throughout: hbar = 1, coupling g = 1 (times are g*t), lengths
in units of the cavity wavelength.
"""

from .dressed import (
    BlockCoefficients,
    BlockEigensystem,
    EvolutionAmplitudes,
    block_coefficients,
    block_eigensystem,
    evolution_amplitudes,
    oracle_block_diagonalize,
)
from .entanglement import (
    EntanglementScenario,
    TwoQubitState,
    concurrence_general,
    concurrence_series,
    concurrence_x_state,
    rho_case1,
    rho_case2,
)
from .field import FieldDistribution, coherent_distribution, fock_distribution
from .spatial import (
    RelativeDensityGrid,
    SpatialScenario,
    antidiagonal_factor,
    decoherence_factor,
    free_evolution_wavefunction,
    frozen_density,
    gaussian_superposition,
)
from .wigner import WignerGrid, default_momentum_grid, wigner_transform

__version__ = "0.1.0"

__all__ = [
    "BlockCoefficients",
    "BlockEigensystem",
    "EvolutionAmplitudes",
    "block_coefficients",
    "block_eigensystem",
    "evolution_amplitudes",
    "oracle_block_diagonalize",
    "FieldDistribution",
    "fock_distribution",
    "coherent_distribution",
    "SpatialScenario",
    "RelativeDensityGrid",
    "gaussian_superposition",
    "decoherence_factor",
    "antidiagonal_factor",
    "frozen_density",
    "free_evolution_wavefunction",
    "WignerGrid",
    "default_momentum_grid",
    "wigner_transform",
    "EntanglementScenario",
    "TwoQubitState",
    "rho_case1",
    "rho_case2",
    "concurrence_x_state",
    "concurrence_general",
    "concurrence_series",
    "__version__",
]
