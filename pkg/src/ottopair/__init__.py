"""Quantum Otto engines and refrigerators built from coupled pairs.

Evaluates four-stroke Otto cycles whose working medium is a pair of
quadratically coupled harmonic oscillators or exchange-coupled spin-1/2
systems, decomposed into independent modes.  Includes per-mode and global
heats/work/figures of merit, sandwich bounds, critical couplings,
small-coupling cross-checks, Wootters concurrence of the spin thermal
states, work-extraction optimization, and a brute-force oracle suite.
"""

from .cycle import (
    CycleResult,
    ModeCycleResult,
    Regime,
    classify_regime,
    critical_coupling,
    evaluate_cycle,
    figure_of_merit_bounds,
    mode_heats,
    occupation_relaxation,
    perturbative_prediction,
    xx_cop_difference,
    xx_efficiency_difference,
)
from .entanglement import (
    ConcurrencePair,
    concurrence,
    cycle_concurrences,
    spin_pair_hamiltonian,
    thermal_state,
)
from .errors import (
    ConfigError,
    DegenerateBaths,
    DomainError,
    EmptyDomain,
    InconsistentEnergy,
    NumericalError,
    OttoPairError,
    RegimeMismatch,
    UnknownModel,
)
from .medium import (
    BathPair,
    CyclePoint,
    CycleSpec,
    MediumKind,
    ModePair,
    OscillatorCoupling,
    OscillatorNormalModes,
    SpinCoupling,
    mean_occupation,
    mode_pairs_for_cycle,
    oscillator_normal_modes,
    spin_normal_modes,
    standard_cycle,
)
from .optimize import (
    SampleRecord,
    SearchDomain,
    max_coupled_work,
    max_uncoupled_work,
    sample_engine_points,
)
from .oracle import (
    exact_spin_spectrum,
    partition_factorization_check,
    run_verification,
    thermal_energy_check,
    truncated_oscillator_matrix,
)

__version__ = "0.1.0"
