"""Per-mode and global Otto-cycle thermodynamics.

Sign convention: every heat is "into the system", so the closed-cycle
energy balance is simply ``W = Q_h + Q_c`` with ``W`` the work done *by*
the system.  A mode (or the total system) is an

* engine       when ``W > eps`` and ``Q_h > eps``       (figure of merit eta = W/Q_h),
* refrigerator when ``Q_c > eps`` and ``W < -eps``      (figure of merit zeta = Q_c/|W|),
* dissipator   otherwise (no figure of merit; points within eps of a
  regime boundary carry ``at_boundary=True``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegenerateBaths,
    DomainError,
    InconsistentEnergy,
    RegimeMismatch,
    UnknownModel,
)
from .medium import BathPair, CycleSpec, MediumKind, ModePairs, mode_pairs_for_cycle

__all__ = [
    "Regime",
    "RegimeLabel",
    "ModeCycleResult",
    "CycleResult",
    "coth",
    "mode_heats",
    "classify_regime",
    "evaluate_cycle",
    "figure_of_merit_bounds",
    "critical_coupling",
    "perturbative_prediction",
    "xx_efficiency_difference",
    "xx_cop_difference",
    "occupation_relaxation",
    "heats_arrays",
    "default_tolerance",
]


class Regime(enum.Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    DISSIPATOR = "dissipator"


@dataclass(frozen=True)
class RegimeLabel:
    regime: Regime
    at_boundary: bool


@dataclass(frozen=True)
class ModeCycleResult:
    """One decoupled mode over a full cycle."""

    mode_id: str
    omega_hot: float
    omega_cold: float
    q_h: float
    q_c: float
    w: float
    regime: Regime
    at_boundary: bool
    figure_of_merit: Optional[float]


@dataclass(frozen=True)
class CycleResult:
    """Both modes plus the global (total-system) quantities.

    ``weight`` is the convex weight of mode A in the global figure of
    merit: the heat fraction Q_A/(Q_A+Q_B) when both modes are engines,
    the work fraction |W_A|/|W_A+W_B| when both are refrigerators.
    ``bounds`` is the (min, max) per-mode figure-of-merit interval and is
    attached only when both modes share the operating regime.
    """

    mode_a: ModeCycleResult
    mode_b: ModeCycleResult
    q_h_total: float
    q_c_total: float
    w_total: float
    regime: Regime
    at_boundary: bool
    global_figure: Optional[float]
    weight: Optional[float]
    bounds: Optional[tuple[float, float]]

    @property
    def modes(self) -> tuple[ModeCycleResult, ModeCycleResult]:
        return (self.mode_a, self.mode_b)


# ---------------------------------------------------------------------------
# stable special functions


_COTH_SERIES_CUTOFF = 1e-8


def coth(x):
    """Numerically stable coth, array-friendly.

    Uses 1/tanh for ordinary arguments and the series 1/x + x/3 below
    1e-8 where 1/tanh loses accuracy.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _COTH_SERIES_CUTOFF
    with np.errstate(divide="ignore"):
        series = 1.0 / np.where(small, x, 1.0) + x / 3.0
        direct = 1.0 / np.tanh(np.where(small, 1.0, x))
    out = np.where(small, series, direct)
    if out.ndim == 0:
        return float(out)
    return out


def default_tolerance(q_h: float, q_c: float) -> float:
    """Regime tolerance: 1e-12 x max(|Q_h|, |Q_c|, 1)."""
    return 1e-12 * max(abs(q_h), abs(q_c), 1.0)


# ---------------------------------------------------------------------------
# heats and regimes


def heats_arrays(kind: MediumKind, omega_hot, omega_cold, beta_h, beta_c):
    """Vectorized per-mode heats; no validation, broadcasts all arguments.

    Returns (q_h, q_c, w) with q_h = (omega_hot/2) * bracket and
    q_c = -(omega_cold/2) * bracket, where the bracket is
    coth(beta_h*omega_hot/2) - coth(beta_c*omega_cold/2) for oscillators
    and tanh(beta_c*omega_cold/2) - tanh(beta_h*omega_hot/2) for spins.
    """
    omega_hot = np.asarray(omega_hot, dtype=float)
    omega_cold = np.asarray(omega_cold, dtype=float)
    with np.errstate(invalid="ignore"):
        if kind is MediumKind.OSCILLATOR:
            bracket = coth(0.5 * beta_h * omega_hot) - coth(0.5 * beta_c * omega_cold)
        else:
            bracket = np.tanh(0.5 * beta_c * omega_cold) - np.tanh(0.5 * beta_h * omega_hot)
        q_h = 0.5 * omega_hot * bracket
        q_c = -0.5 * omega_cold * bracket
    return q_h, q_c, q_h + q_c


def mode_heats(
    kind: MediumKind, omega_hot: float, omega_cold: float, baths: BathPair
) -> tuple[float, float, float]:
    """Signed heats and work for a single decoupled mode.

    Parameters
    ----------
    kind : MediumKind
        Oscillator or spin statistics.
    omega_hot, omega_cold : float
        Mode frequency during the hot and cold isochores.
    baths : BathPair
        Hot/cold bath temperatures.

    Returns
    -------
    (q_h, q_c, w)
        Heat from the hot bath, heat from the cold bath (both signed into
        the system) and the work done by the system, ``w = q_h + q_c``.
    """
    if not (omega_hot > 0.0 and omega_cold > 0.0):
        raise DomainError(
            f"mode frequencies must be positive, got ({omega_hot}, {omega_cold})"
        )
    q_h, q_c, w = heats_arrays(kind, omega_hot, omega_cold, baths.beta_h, baths.beta_c)
    return float(q_h), float(q_c), float(w)


def classify_regime(
    q_h: float, q_c: float, w: float, eps: Optional[float] = None
) -> RegimeLabel:
    """Classify a (Q_h, Q_c, W) triple into engine / refrigerator / dissipator.

    Raises InconsistentEnergy if the triple violates W = Q_h + Q_c beyond
    the tolerance.  Points within eps of a regime boundary are classified
    as dissipator with ``at_boundary=True`` rather than silently landing
    in an operating regime.
    """
    if eps is None:
        eps = default_tolerance(q_h, q_c)
    if abs(w - q_h - q_c) > eps:
        raise InconsistentEnergy(
            f"W - Q_h - Q_c = {w - q_h - q_c!r} exceeds tolerance {eps!r}"
        )
    if w > eps and q_h > eps:
        return RegimeLabel(Regime.ENGINE, False)
    if q_c > eps and w < -eps:
        return RegimeLabel(Regime.REFRIGERATOR, False)
    near_engine = w > -eps and q_h > -eps
    near_fridge = q_c > -eps and w < eps
    return RegimeLabel(Regime.DISSIPATOR, near_engine or near_fridge)


def _mode_result(
    mode_id: str,
    kind: MediumKind,
    omega_hot: float,
    omega_cold: float,
    baths: BathPair,
    eps: Optional[float],
) -> ModeCycleResult:
    q_h, q_c, w = mode_heats(kind, omega_hot, omega_cold, baths)
    label = classify_regime(q_h, q_c, w, eps)
    fom: Optional[float] = None
    if label.regime is Regime.ENGINE:
        fom = w / q_h
    elif label.regime is Regime.REFRIGERATOR:
        fom = q_c / abs(w)
    return ModeCycleResult(
        mode_id=mode_id,
        omega_hot=omega_hot,
        omega_cold=omega_cold,
        q_h=q_h,
        q_c=q_c,
        w=w,
        regime=label.regime,
        at_boundary=label.at_boundary,
        figure_of_merit=fom,
    )


def evaluate_cycle(spec: CycleSpec, eps: Optional[float] = None) -> CycleResult:
    """Evaluate a full cycle: per-mode heats and regimes, totals, global
    figure of merit, convex weight and per-mode bounds.

    The global figure of merit is W_total/Q_h_total when the totals
    satisfy the engine condition and Q_c_total/|W_total| when they
    satisfy the refrigerator condition; otherwise it is absent (mixed or
    dissipative cycles have no figure of merit).
    """
    pairs: ModePairs = mode_pairs_for_cycle(spec)
    a = _mode_result("A", spec.kind, pairs.a[0], pairs.a[1], spec.baths, eps)
    b = _mode_result("B", spec.kind, pairs.b[0], pairs.b[1], spec.baths, eps)

    q_h = a.q_h + b.q_h
    q_c = a.q_c + b.q_c
    w = a.w + b.w
    label = classify_regime(q_h, q_c, w, eps)

    figure: Optional[float] = None
    if label.regime is Regime.ENGINE:
        figure = w / q_h
    elif label.regime is Regime.REFRIGERATOR:
        figure = q_c / abs(w)

    weight: Optional[float] = None
    bounds: Optional[tuple[float, float]] = None
    if a.regime is b.regime and a.regime is Regime.ENGINE:
        weight = a.q_h / (a.q_h + b.q_h)
        bounds = (
            min(a.figure_of_merit, b.figure_of_merit),
            max(a.figure_of_merit, b.figure_of_merit),
        )
    elif a.regime is b.regime and a.regime is Regime.REFRIGERATOR:
        weight = abs(a.w) / abs(a.w + b.w)
        bounds = (
            min(a.figure_of_merit, b.figure_of_merit),
            max(a.figure_of_merit, b.figure_of_merit),
        )

    return CycleResult(
        mode_a=a,
        mode_b=b,
        q_h_total=q_h,
        q_c_total=q_c,
        w_total=w,
        regime=label.regime,
        at_boundary=label.at_boundary,
        global_figure=figure,
        weight=weight,
        bounds=bounds,
    )


def figure_of_merit_bounds(result: CycleResult) -> tuple[float, float]:
    """(min, max) of the per-mode figures of merit.

    Defined only when both modes operate in the same regime; the global
    figure of merit always lies in this closed interval.
    """
    if result.bounds is None:
        raise RegimeMismatch(
            f"modes operate as {result.mode_a.regime.value} / "
            f"{result.mode_b.regime.value}; no joint bounds"
        )
    return result.bounds


def critical_coupling(
    mode: str, omega: float, omega_prime: float, baths: BathPair
) -> float:
    """XX-model coupling at which one mode hits the Carnot condition.

    For ``mode="engine"`` this is lambda_c = (omega' T_h - omega T_c) /
    (T_h - T_c), where the "-" branch mode satisfies beta_h w_B =
    beta_c w_B' and delivers zero work.  For ``mode="refrigerator"`` it is
    lambda_c' = (omega T_c - omega' T_h)/(T_h - T_c), where the "+" branch
    mode transfers zero heat.  The two are negatives of each other.
    """
    t_h, t_c = baths.t_h, baths.t_c
    if t_h == t_c:
        raise DegenerateBaths("critical coupling undefined for t_h == t_c")
    if mode == "engine":
        return (omega_prime * t_h - omega * t_c) / (t_h - t_c)
    if mode == "refrigerator":
        return (omega * t_c - omega_prime * t_h) / (t_h - t_c)
    raise UnknownModel(f"mode must be 'engine' or 'refrigerator', got {mode!r}")


# ---------------------------------------------------------------------------
# small-coupling predictions (second order in the coupling)


def _csch(x: float) -> float:
    return 1.0 / math.sinh(x)


def _sech(x: float) -> float:
    return 1.0 / math.cosh(x)


def perturbative_prediction(
    model: str,
    omega: float,
    omega_prime: float,
    baths: BathPair,
    lam: float,
) -> float:
    """Second-order small-coupling approximation of eta or zeta.

    ``model`` is one of ``xx-engine-os``, ``xx-engine-sp``,
    ``xx-fridge-os``, ``xx-fridge-sp``, ``xy-engine-os``, ``xy-engine-sp``,
    ``xy-fridge-os``, ``xy-fridge-sp``.  Returns the uncoupled value plus
    the lambda^2 correction; used as a cross-check of `evaluate_cycle`,
    valid where the target device operates at zero coupling.
    """
    t_h, t_c = baths.t_h, baths.t_c
    x = 0.5 * omega / t_h
    y = 0.5 * omega_prime / t_c
    lam2 = lam * lam
    tag = model.lower()

    if tag.startswith("xx-engine"):
        gamma = (omega - omega_prime) / (t_h * t_c * omega**2)
        eta0 = 1.0 - omega_prime / omega
        if tag == "xx-engine-os":
            num = t_c * _csch(x) ** 2 - t_h * _csch(y) ** 2
            den = 2.0 * (coth(x) - coth(y))
            return eta0 + gamma * num / den * lam2
        if tag == "xx-engine-sp":
            num = t_h * _sech(y) ** 2 - t_c * _sech(x) ** 2
            den = 2.0 * (math.tanh(x) - math.tanh(y))
            return eta0 + gamma * num / den * lam2
    elif tag.startswith("xx-fridge"):
        gamma_p = t_h * t_c * (omega - omega_prime)
        zeta0 = omega_prime / (omega - omega_prime)
        if tag == "xx-fridge-os":
            num = t_h * _csch(y) ** 2 - t_c * _csch(x) ** 2
            den = 2.0 * gamma_p * (coth(x) - coth(y))
            return zeta0 + num / den * lam2
        if tag == "xx-fridge-sp":
            num = t_c * _sech(x) ** 2 - t_h * _sech(y) ** 2
            den = 2.0 * gamma_p * (math.tanh(x) - math.tanh(y))
            return zeta0 + num / den * lam2
    elif tag.startswith("xy-engine"):
        eta0 = 1.0 - omega_prime / omega
        corr = (omega**2 - omega_prime**2) * lam2 / (2.0 * omega**3 * omega_prime)
        if tag == "xy-engine-os":
            return eta0 + corr
        if tag == "xy-engine-sp":
            return eta0 - corr
    elif tag.startswith("xy-fridge"):
        zeta0 = omega_prime / (omega - omega_prime)
        corr = (omega + omega_prime) * lam2 / (
            2.0 * omega * omega_prime * (omega - omega_prime)
        )
        if tag == "xy-fridge-os":
            return zeta0 - corr
        if tag == "xy-fridge-sp":
            return zeta0 + corr
    raise UnknownModel(f"unknown prediction tag: {model!r}")


def xx_efficiency_difference(
    omega: float, omega_prime: float, baths: BathPair, lam: float
) -> float:
    """Predicted eta_os - eta_sp for small XX coupling; positive whenever
    omega > omega' in the engine regime."""
    t_h, t_c = baths.t_h, baths.t_c
    gamma = (omega - omega_prime) / (t_h * t_c * omega**2)
    return gamma * (t_c * _csch(omega / t_h) + t_h * _csch(omega_prime / t_c)) * lam * lam


def xx_cop_difference(
    omega: float, omega_prime: float, baths: BathPair, lam: float
) -> float:
    """Predicted zeta_sp - zeta_os for small XX coupling; positive whenever
    omega > omega' in the refrigerator regime."""
    t_h, t_c = baths.t_h, baths.t_c
    gamma_p = t_h * t_c * (omega - omega_prime)
    return (t_c * _csch(omega / t_h) + t_h * _csch(omega_prime / t_c)) * lam * lam / gamma_p


def occupation_relaxation(n0: float, n_eq: float, rate: float, t: float) -> float:
    """Closed-form occupation relaxation against a flat reservoir:
    ``(n0 - n_eq) exp(-rate * t) + n_eq``."""
    if rate < 0.0 or t < 0.0:
        raise DomainError(f"need rate >= 0 and t >= 0, got rate={rate}, t={t}")
    return (n0 - n_eq) * math.exp(-rate * t) + n_eq
