"""Dirac and Klein-Gordon oscillators in the pointlike global monopole spacetime.

Closed-form spectra, eigenfunctions and normalization constants, hard-wall
levels (exact and asymptotic), and independent numerical oracles.
"""

__version__ = "0.1.0"

from .model import (
    Branch,
    DiracChannel,
    DiracWhittakerParams,
    EnergyLevel,
    KgoChannel,
    KgoWhittakerParams,
    MonopoleBackground,
    Oscillator,
    RadialProfile,
    dirac_params,
    kgo_params,
)
from .specfun import DomainError, KummerConvergenceError
from .dirac import (
    SingularCaseError,
    dirac_eigenfunctions,
    dirac_energy,
    dirac_norm_closed,
    dirac_norm_quadrature,
)
from .kgo import kgo_eigenfunction, kgo_energy, kgo_norm_closed, kgo_norm_quadrature
from .hardwall import (
    Condition,
    HardWallRootError,
    HardWallSpec,
    Mode,
    dirac_hardwall_asymptotic,
    dirichlet_exact_levels,
    kgo_hardwall_asymptotic,
    mit_exact_levels,
    neumann_exact_levels,
)
