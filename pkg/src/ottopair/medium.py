"""Working media for the coupled-pair Otto cycle.

Two media are supported: a pair of identical harmonic oscillators coupled
quadratically through positions and momenta (strengths ``lambda_x``,
``lambda_p``), and a pair of spin-1/2 systems with exchange coupling
(``j_x``, ``j_y``).  In both cases the pair decouples into two independent
modes, labeled A ("+" branch) and B ("-" branch); all cycle thermodynamics
is computed mode by mode.

Units: hbar = k_B = 1 everywhere, so frequencies, temperatures and
couplings are plain positive reals with the same dimension.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError, UnknownModel

__all__ = [
    "MediumKind",
    "BathPair",
    "OscillatorCoupling",
    "SpinCoupling",
    "Coupling",
    "CyclePoint",
    "CycleSpec",
    "ModePair",
    "OscillatorNormalModes",
    "ModePairs",
    "oscillator_normal_modes",
    "spin_normal_modes",
    "mean_occupation",
    "mode_pairs_for_cycle",
    "standard_cycle",
    "oscillator_mode_frequencies",
    "spin_mode_frequencies",
]


class MediumKind(enum.Enum):
    OSCILLATOR = "osc"
    SPIN = "spin"


@dataclass(frozen=True)
class BathPair:
    """Hot/cold bath temperatures, ``t_h > t_c > 0``."""

    t_h: float
    t_c: float

    def __post_init__(self):
        if not (self.t_h > self.t_c > 0.0):
            raise DomainError(
                f"bath temperatures must satisfy t_h > t_c > 0, got "
                f"t_h={self.t_h}, t_c={self.t_c}"
            )

    @property
    def beta_h(self) -> float:
        return 1.0 / self.t_h

    @property
    def beta_c(self) -> float:
        return 1.0 / self.t_c

    @property
    def carnot_efficiency(self) -> float:
        return 1.0 - self.t_c / self.t_h

    @property
    def carnot_cop(self) -> float:
        return self.t_c / (self.t_h - self.t_c)


@dataclass(frozen=True)
class OscillatorCoupling:
    """Position/momentum coupling strengths, same units as the frequency."""

    lambda_x: float
    lambda_p: float


@dataclass(frozen=True)
class SpinCoupling:
    """Exchange constants along x and y."""

    j_x: float
    j_y: float


Coupling = Union[OscillatorCoupling, SpinCoupling]

_COUPLING_FOR_KIND = {
    MediumKind.OSCILLATOR: OscillatorCoupling,
    MediumKind.SPIN: SpinCoupling,
}


@dataclass(frozen=True)
class CyclePoint:
    """Bare frequency and coupling at one end of the adiabatic strokes."""

    omega: float
    coupling: Coupling

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"bare frequency must be positive, got {self.omega}")


@dataclass(frozen=True)
class CycleSpec:
    """Full description of one Otto cycle: medium kind, the hot-side and
    cold-side control points, and the bath pair."""

    kind: MediumKind
    hot: CyclePoint
    cold: CyclePoint
    baths: BathPair

    def __post_init__(self):
        want = _COUPLING_FOR_KIND[self.kind]
        for name, point in (("hot", self.hot), ("cold", self.cold)):
            if not isinstance(point.coupling, want):
                raise DomainError(
                    f"{name} point carries {type(point.coupling).__name__}, "
                    f"expected {want.__name__} for kind={self.kind.value}"
                )


@dataclass(frozen=True)
class ModePair:
    """Decoupled mode frequencies at a single cycle point (A = '+' branch)."""

    omega_a: float
    omega_b: float

    def __post_init__(self):
        if not (self.omega_a > 0.0 and self.omega_b > 0.0):
            raise DomainError(
                f"mode frequencies must be positive, got ({self.omega_a}, {self.omega_b})"
            )


@dataclass(frozen=True)
class OscillatorNormalModes:
    """Mode frequencies plus the effective masses of the decoupled frame."""

    modes: ModePair
    m_a: float
    m_b: float


class ModePairs(NamedTuple):
    """(hot, cold) frequency pairs for each decoupled mode of a cycle.

    Mode identity is fixed by the branch sign, never by re-sorting, so the
    per-mode cycles remain well defined even when the curves cross.
    """

    a: tuple[float, float]
    b: tuple[float, float]


# ---------------------------------------------------------------------------
# decompositions


def oscillator_normal_modes(
    omega: float, lambda_x: float, lambda_p: float, m: float = 1.0
) -> OscillatorNormalModes:
    """Decouple a coupled oscillator pair into its two normal modes.

    Parameters
    ----------
    omega : float
        Common bare frequency of the two oscillators.
    lambda_x, lambda_p : float
        Position and momentum coupling strengths.
    m : float
        Bare oscillator mass (drops out of all cycle quantities).

    Returns
    -------
    OscillatorNormalModes
        Frequencies ``sqrt((omega +/- lambda_p) (omega +/- lambda_x))`` and
        effective masses ``m * omega / (omega +/- lambda_p)``.

    Raises
    ------
    DomainError
        If ``omega <= max(|lambda_x|, |lambda_p|)`` (an unstable or
        imaginary mode) or ``m <= 0``.
    """
    if not omega > max(abs(lambda_x), abs(lambda_p)):
        raise DomainError(
            f"unstable mode: need omega > max(|lambda_x|, |lambda_p|), got "
            f"omega={omega}, lambda_x={lambda_x}, lambda_p={lambda_p}"
        )
    if not m > 0.0:
        raise DomainError(f"mass must be positive, got {m}")
    w_a = math.sqrt((omega + lambda_p) * (omega + lambda_x))
    w_b = math.sqrt((omega - lambda_p) * (omega - lambda_x))
    return OscillatorNormalModes(
        modes=ModePair(w_a, w_b),
        m_a=m * omega / (omega + lambda_p),
        m_b=m * omega / (omega - lambda_p),
    )


def spin_normal_modes(omega: float, j_x: float, j_y: float) -> ModePair:
    """Decouple a coupled spin-1/2 pair into two independent spin modes.

    With ``lp = (j_x + j_y)/2`` and ``lm = (j_x - j_y)/2`` the mode
    frequencies are ``sqrt(omega^2 + lm^2) +/- lp``.  This reduces to
    ``omega +/- j`` for the XX model and to ``sqrt(omega^2 + j^2)`` for the
    XY model; the general form is certified against the exact 4x4 spectrum
    by the oracle module.

    Raises
    ------
    DomainError
        If ``omega <= 0`` or the "-" branch frequency would be non-positive.
    """
    if not omega > 0.0:
        raise DomainError(f"bare frequency must be positive, got {omega}")
    l_plus = 0.5 * (j_x + j_y)
    l_minus = 0.5 * (j_x - j_y)
    s = math.hypot(omega, l_minus)
    if not s > abs(l_plus):
        raise DomainError(
            f"non-positive mode spacing: sqrt(omega^2 + lm^2)={s} <= |lp|={abs(l_plus)}"
        )
    return ModePair(s + l_plus, s - l_plus)


def mean_occupation(kind: MediumKind, beta: float, omega: float) -> float:
    """Thermal mean excitation number of a single mode.

    Oscillator: ``1/(exp(beta*omega) - 1)``; spin: ``1/(exp(beta*omega) + 1)``.
    Evaluated through ``exp(-beta*omega)`` so large arguments underflow to 0
    instead of overflowing.
    """
    if not (beta > 0.0 and omega > 0.0):
        raise DomainError(f"need beta > 0 and omega > 0, got beta={beta}, omega={omega}")
    q = math.exp(-beta * omega)
    if kind is MediumKind.OSCILLATOR:
        return q / (1.0 - q)
    if kind is MediumKind.SPIN:
        return q / (1.0 + q)
    raise UnknownModel(f"unknown medium kind: {kind!r}")


def mode_pairs_for_cycle(spec: CycleSpec) -> ModePairs:
    """Hot/cold decoupled frequencies for both modes of a cycle.

    Applies the appropriate decomposition at the hot and cold points and
    keeps the branch identity (A = "+", B = "-") across the two points.
    """
    if spec.kind is MediumKind.OSCILLATOR:
        hot = oscillator_normal_modes(
            spec.hot.omega, spec.hot.coupling.lambda_x, spec.hot.coupling.lambda_p
        ).modes
        cold = oscillator_normal_modes(
            spec.cold.omega, spec.cold.coupling.lambda_x, spec.cold.coupling.lambda_p
        ).modes
    else:
        hot = spin_normal_modes(spec.hot.omega, spec.hot.coupling.j_x, spec.hot.coupling.j_y)
        cold = spin_normal_modes(spec.cold.omega, spec.cold.coupling.j_x, spec.cold.coupling.j_y)
    return ModePairs(a=(hot.omega_a, cold.omega_a), b=(hot.omega_b, cold.omega_b))


def standard_cycle(
    kind: MediumKind,
    model: str,
    omega: float,
    omega_prime: float,
    coupling,
    baths: BathPair,
) -> CycleSpec:
    """Build a frequency-driven cycle for one of the named coupling models.

    ``model`` is ``"xx"`` (coupling = scalar, j_x = j_y = lambda_x =
    lambda_p), ``"xy"`` (coupling = scalar, j_x = -j_y, lambda_x =
    -lambda_p) or ``"general"`` (coupling = (cx, cy) pair).  The same
    coupling is used at the hot and cold points; only the bare frequency
    is driven.
    """
    model = model.lower()
    if model == "xx":
        pair = (float(coupling), float(coupling))
    elif model == "xy":
        pair = (float(coupling), -float(coupling))
    elif model == "general":
        cx, cy = coupling
        pair = (float(cx), float(cy))
    else:
        raise UnknownModel(f"unknown coupling model: {model!r}")
    if kind is MediumKind.OSCILLATOR:
        c = OscillatorCoupling(lambda_x=pair[0], lambda_p=pair[1])
    else:
        c = SpinCoupling(j_x=pair[0], j_y=pair[1])
    return CycleSpec(
        kind=kind,
        hot=CyclePoint(omega, c),
        cold=CyclePoint(omega_prime, c),
        baths=baths,
    )


# ---------------------------------------------------------------------------
# vectorized kernels (no validation; invalid points come back as nan)


def oscillator_mode_frequencies(omega, lambda_x, lambda_p):
    """Array version of the oscillator decomposition; returns (w_a, w_b).

    Entries violating the positivity condition come back as nan rather
    than raising, so sweeps can mask them.
    """
    omega = np.asarray(omega, dtype=float)
    with np.errstate(invalid="ignore"):
        w_a = np.sqrt((omega + lambda_p) * (omega + lambda_x))
        w_b = np.sqrt((omega - lambda_p) * (omega - lambda_x))
    bad = ~(omega > np.maximum(np.abs(lambda_x), np.abs(lambda_p)))
    w_a = np.where(bad, np.nan, w_a)
    w_b = np.where(bad, np.nan, w_b)
    return w_a, w_b


def spin_mode_frequencies(omega, j_x, j_y):
    """Array version of the spin decomposition; returns (w_a, w_b) with nan
    where a mode frequency would be non-positive."""
    omega = np.asarray(omega, dtype=float)
    l_plus = 0.5 * (np.asarray(j_x, dtype=float) + j_y)
    l_minus = 0.5 * (np.asarray(j_x, dtype=float) - j_y)
    s = np.hypot(omega, l_minus)
    w_a = s + l_plus
    w_b = s - l_plus
    bad = ~((omega > 0) & (w_a > 0) & (w_b > 0))
    w_a = np.where(bad, np.nan, w_a)
    w_b = np.where(bad, np.nan, w_b)
    return w_a, w_b
