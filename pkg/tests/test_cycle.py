import math
from types import SimpleNamespace

import numpy as np
import pytest

from ottopair.cycle import (
    Regime,
    classify_regime,
    coth,
    critical_coupling,
    evaluate_cycle,
    figure_of_merit_bounds,
    mode_heats,
    occupation_relaxation,
    perturbative_prediction,
    xx_cop_difference,
    xx_efficiency_difference,
)
from ottopair.errors import (
    DegenerateBaths,
    DomainError,
    InconsistentEnergy,
    RegimeMismatch,
    UnknownModel,
)
from ottopair.medium import (
    BathPair,
    CyclePoint,
    CycleSpec,
    MediumKind,
    OscillatorCoupling,
    SpinCoupling,
    standard_cycle,
)

OSC = MediumKind.OSCILLATOR
SPIN = MediumKind.SPIN
BATHS = BathPair(2.0, 1.0)


def _coth(x):
    return 1.0 / math.tanh(x)


def test_mode_heats_oscillator_reference_point():
    q_h, q_c, w = mode_heats(OSC, 4.0, 3.0, BATHS)
    bracket = _coth(1.0) - _coth(1.5)
    assert q_h == pytest.approx(2.0 * bracket, rel=1e-14)
    assert q_c == pytest.approx(-1.5 * bracket, rel=1e-14)
    assert w == pytest.approx(0.5 * bracket, rel=1e-14)
    assert w == pytest.approx(0.10412194625840987, rel=1e-13)


def test_mode_heats_spin_reference_point():
    q_h, q_c, w = mode_heats(SPIN, 4.0, 3.0, BATHS)
    bracket = math.tanh(1.5) - math.tanh(1.0)
    assert q_h == pytest.approx(2.0 * bracket, rel=1e-14)
    assert w == pytest.approx(0.5 * bracket, rel=1e-14)
    assert w == pytest.approx(0.07177704884455075, rel=1e-13)


def test_mode_heats_vanish_at_carnot_condition():
    # beta_h * omega_hot == beta_c * omega_cold
    for kind in (OSC, SPIN):
        q_h, q_c, w = mode_heats(kind, 4.0, 2.0, BATHS)
        assert q_h == q_c == w == 0.0
    with pytest.raises(DomainError):
        mode_heats(OSC, 0.0, 1.0, BATHS)


def test_classify_regime_signs():
    assert classify_regime(0.5, -0.4, 0.1).regime is Regime.ENGINE
    assert classify_regime(-0.5, 0.2, -0.3).regime is Regime.REFRIGERATOR
    label = classify_regime(0.0, 0.0, 0.0)
    assert label.regime is Regime.DISSIPATOR and label.at_boundary
    # deep dissipator: consumes work, heats both baths
    label = classify_regime(0.5, -0.8, -0.3)
    assert label.regime is Regime.DISSIPATOR and not label.at_boundary
    with pytest.raises(InconsistentEnergy):
        classify_regime(0.5, -0.4, 0.3)


def test_evaluate_cycle_uncoupled_efficiency():
    result = evaluate_cycle(standard_cycle(OSC, "xx", 4.0, 3.0, 0.0, BATHS))
    assert result.regime is Regime.ENGINE
    assert result.global_figure == pytest.approx(0.25, abs=1e-14)
    assert result.bounds == (0.25, 0.25)
    assert result.weight == pytest.approx(0.5, abs=1e-14)


def test_evaluate_cycle_carnot_point_collapse():
    # at lambda_c the "-" mode hits the Carnot condition with zero work and
    # the global efficiency equals eta_A
    lam_c = critical_coupling("engine", 4.0, 3.0, BATHS)
    assert lam_c == pytest.approx(2.0, abs=1e-14)
    for kind in (OSC, SPIN):
        result = evaluate_cycle(standard_cycle(kind, "xx", 4.0, 3.0, lam_c, BATHS))
        assert result.mode_b.regime is Regime.DISSIPATOR
        assert result.mode_b.at_boundary
        assert abs(result.mode_b.w) < 1e-14
        assert result.global_figure == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert result.global_figure == pytest.approx(result.mode_a.figure_of_merit, abs=1e-12)


def test_evaluate_cycle_fridge_collapse_at_critical_coupling():
    lam_c = critical_coupling("refrigerator", 5.0, 2.0, BATHS)
    assert lam_c == pytest.approx(1.0, abs=1e-14)
    for kind in (OSC, SPIN):
        result = evaluate_cycle(standard_cycle(kind, "xx", 5.0, 2.0, lam_c, BATHS))
        assert result.mode_a.regime is Regime.DISSIPATOR and result.mode_a.at_boundary
        zeta_b = result.mode_b.figure_of_merit
        assert zeta_b == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert result.global_figure == pytest.approx(zeta_b, abs=1e-12)


def test_evaluate_cycle_xy_spin_fridge_closed_form():
    result = evaluate_cycle(standard_cycle(SPIN, "xy", 5.0, 2.0, 1.0, BATHS))
    assert result.regime is Regime.REFRIGERATOR
    assert result.global_figure == pytest.approx(1.0 / (math.sqrt(26.0 / 5.0) - 1.0), rel=1e-13)


def test_figure_of_merit_bounds_examples():
    result = evaluate_cycle(standard_cycle(SPIN, "xx", 4.0, 3.0, 1.0, BATHS))
    assert figure_of_merit_bounds(result) == pytest.approx((0.2, 1.0 / 3.0), abs=1e-14)

    result = evaluate_cycle(standard_cycle(SPIN, "xx", 5.0, 2.0, 0.5, BATHS))
    assert result.regime is Regime.REFRIGERATOR
    assert figure_of_merit_bounds(result) == pytest.approx((0.5, 5.0 / 6.0), abs=1e-13)

    result = evaluate_cycle(standard_cycle(OSC, "xx", 4.0, 3.0, 0.0, BATHS))
    lo, hi = figure_of_merit_bounds(result)
    assert lo == hi == pytest.approx(0.25, abs=1e-14)

    mixed = evaluate_cycle(standard_cycle(SPIN, "xx", 4.0, 3.0, 2.5, BATHS))
    assert mixed.mode_a.regime is not mixed.mode_b.regime
    with pytest.raises(RegimeMismatch):
        figure_of_merit_bounds(mixed)


def test_critical_couplings_are_negatives():
    rng = np.random.default_rng(5)
    for _ in range(50):
        omega, omega_prime = rng.uniform(0.5, 8.0, 2)
        t_c = rng.uniform(0.5, 2.0)
        baths = BathPair(t_c * rng.uniform(1.2, 3.0), t_c)
        lam_c = critical_coupling("engine", omega, omega_prime, baths)
        lam_cp = critical_coupling("refrigerator", omega, omega_prime, baths)
        assert lam_c == pytest.approx(-lam_cp, rel=1e-12, abs=1e-12)
    with pytest.raises(DegenerateBaths):
        critical_coupling("engine", 4.0, 3.0, SimpleNamespace(t_h=2.0, t_c=2.0))
    with pytest.raises(UnknownModel):
        critical_coupling("heater", 4.0, 3.0, BATHS)


def test_critical_coupling_puts_designated_mode_on_carnot_line():
    baths = BathPair(1.7, 0.6)
    lam = critical_coupling("engine", 5.0, 2.4, baths)
    w_b, w_b_c = 5.0 - lam, 2.4 - lam
    assert baths.beta_h * w_b == pytest.approx(baths.beta_c * w_b_c, rel=1e-12)
    lam = critical_coupling("refrigerator", 5.0, 2.4, baths)
    w_a, w_a_c = 5.0 + lam, 2.4 + lam
    assert baths.beta_h * w_a == pytest.approx(baths.beta_c * w_a_c, rel=1e-12)


def test_energy_balance_and_sandwich_bounds_random():
    rng = np.random.default_rng(6)
    engines = fridges = 0
    while engines < 200 or fridges < 200:
        omega = rng.uniform(0.5, 9.0)
        omega_prime = omega * rng.uniform(0.2, 0.95)
        t_c = rng.uniform(0.3, 2.0)
        baths = BathPair(t_c * rng.uniform(1.2, 4.0), t_c)
        lam = rng.uniform(0.0, 0.9) * omega_prime
        kind = OSC if rng.uniform() < 0.5 else SPIN
        model = ("xx", "xy", "general")[int(rng.integers(3))]
        coupling = (lam, rng.uniform(-0.9, 0.9) * omega_prime) if model == "general" else lam
        result = evaluate_cycle(standard_cycle(kind, model, omega, omega_prime, coupling, baths))
        for mode in result.modes:
            assert mode.w == pytest.approx(mode.q_h + mode.q_c, abs=1e-15 + 1e-13 * abs(mode.w))
        assert result.w_total == result.mode_a.w + result.mode_b.w
        if result.bounds is None:
            continue
        lo, hi = result.bounds
        assert lo - 1e-12 <= result.global_figure <= hi + 1e-12
        if result.regime is Regime.ENGINE:
            engines += 1
            assert result.global_figure <= baths.carnot_efficiency + 1e-12
        elif result.regime is Regime.REFRIGERATOR:
            fridges += 1
            scale = max(1.0, baths.carnot_cop)
            assert result.global_figure <= baths.carnot_cop + 1e-9 * scale


def test_coupling_driven_cycle():
    # adiabats may drive the coupling at fixed bare frequency; the cycle
    # still decomposes mode by mode
    spec = CycleSpec(
        kind=MediumKind.OSCILLATOR,
        hot=CyclePoint(4.0, OscillatorCoupling(0.5, 0.5)),
        cold=CyclePoint(4.0, OscillatorCoupling(2.0, 2.0)),
        baths=BATHS,
    )
    result = evaluate_cycle(spec)
    # mode A runs 4.5 -> 6.0 (a refrigerator stroke), mode B runs 3.5 -> 2.0
    assert (result.mode_a.omega_hot, result.mode_a.omega_cold) == (4.5, 6.0)
    assert (result.mode_b.omega_hot, result.mode_b.omega_cold) == (3.5, 2.0)
    for mode in result.modes:
        q_h, q_c, w = mode_heats(OSC, mode.omega_hot, mode.omega_cold, BATHS)
        assert mode.q_h == q_h and mode.q_c == q_c and mode.w == w
    assert result.mode_b.regime is Regime.ENGINE
    assert result.w_total == result.mode_a.w + result.mode_b.w

    spec = CycleSpec(
        kind=MediumKind.SPIN,
        hot=CyclePoint(4.0, SpinCoupling(1.5, 1.5)),
        cold=CyclePoint(4.0, SpinCoupling(0.25, 0.25)),
        baths=BATHS,
    )
    result = evaluate_cycle(spec)
    assert (result.mode_a.omega_hot, result.mode_a.omega_cold) == (5.5, 4.25)
    assert (result.mode_b.omega_hot, result.mode_b.omega_cold) == (2.5, 3.75)
    if result.bounds is not None:
        lo, hi = result.bounds
        assert lo - 1e-12 <= result.global_figure <= hi + 1e-12


def test_global_figure_is_convex_combination():
    # engine: eta = alpha eta_A + (1 - alpha) eta_B with the heat weight;
    # refrigerator: zeta mixes with the work weight
    rng = np.random.default_rng(21)
    seen = 0
    while seen < 100:
        omega = rng.uniform(1.0, 8.0)
        omega_prime = omega * rng.uniform(0.2, 0.95)
        lam = rng.uniform(0.0, 0.8) * omega_prime
        kind = OSC if rng.uniform() < 0.5 else SPIN
        result = evaluate_cycle(standard_cycle(kind, "xx", omega, omega_prime, lam, BATHS))
        if result.weight is None:
            continue
        seen += 1
        assert 0.0 <= result.weight <= 1.0
        mixed = (
            result.weight * result.mode_a.figure_of_merit
            + (1.0 - result.weight) * result.mode_b.figure_of_merit
        )
        assert mixed == pytest.approx(result.global_figure, rel=1e-12)


def test_work_statistics_ordering():
    # oscillator work dominates spin work for identical mode frequencies
    rng = np.random.default_rng(7)
    for _ in range(200):
        omega = rng.uniform(0.5, 8.0)
        omega_prime = omega * rng.uniform(0.2, 0.95)
        t_c = rng.uniform(0.3, 2.0)
        baths = BathPair(t_c * rng.uniform(1.2, 4.0), t_c)
        w_os = mode_heats(OSC, omega, omega_prime, baths)[2]
        w_sp = mode_heats(SPIN, omega, omega_prime, baths)[2]
        if w_os > 0 and w_sp > 0:
            assert w_os >= w_sp - 1e-15


def test_mixed_regime_global_efficiency_below_engine_mode():
    # past the critical coupling mode B pumps heat backwards and drags the
    # global efficiency below eta_A
    for kind in (OSC, SPIN):
        result = evaluate_cycle(standard_cycle(kind, "xx", 4.0, 3.0, 2.2, BATHS))
        assert result.mode_b.regime is Regime.REFRIGERATOR
        assert result.bounds is None
        if result.regime is Regime.ENGINE:
            assert result.global_figure < result.mode_a.figure_of_merit


def test_xx_orderings_at_small_coupling():
    for lam in (0.01, 0.05, 0.2, 0.5):
        eta_os = evaluate_cycle(standard_cycle(OSC, "xx", 4.0, 3.0, lam, BATHS)).global_figure
        eta_sp = evaluate_cycle(standard_cycle(SPIN, "xx", 4.0, 3.0, lam, BATHS)).global_figure
        assert eta_os > eta_sp
        zeta_os = evaluate_cycle(standard_cycle(OSC, "xx", 5.0, 2.0, lam, BATHS)).global_figure
        zeta_sp = evaluate_cycle(standard_cycle(SPIN, "xx", 5.0, 2.0, lam, BATHS)).global_figure
        assert zeta_sp > zeta_os


def test_xy_orderings_hold_even_for_large_coupling():
    for lam in (0.1, 0.5, 1.0, 2.0, 2.5):
        eta_os = evaluate_cycle(standard_cycle(OSC, "xy", 4.0, 3.0, lam, BATHS)).global_figure
        eta_sp = evaluate_cycle(standard_cycle(SPIN, "xy", 4.0, 3.0, lam, BATHS)).global_figure
        assert eta_os >= eta_sp
        assert eta_os == pytest.approx(
            1.0 - math.sqrt((9.0 - lam * lam) / (16.0 - lam * lam)), rel=1e-12
        )
        assert eta_sp == pytest.approx(
            1.0 - math.sqrt((9.0 + lam * lam) / (16.0 + lam * lam)), rel=1e-12
        )
    for lam in (0.1, 0.5, 1.0, 1.5):
        zeta_os = evaluate_cycle(standard_cycle(OSC, "xy", 5.0, 2.0, lam, BATHS)).global_figure
        zeta_sp = evaluate_cycle(standard_cycle(SPIN, "xy", 5.0, 2.0, lam, BATHS)).global_figure
        assert zeta_sp >= zeta_os


def test_xy_second_order_symmetry():
    # (eta_os - eta_uc) + (eta_sp - eta_uc) cancels at second order
    eta_uc = 0.25
    sums = []
    for lam in (0.01, 0.02):
        eta_os = evaluate_cycle(standard_cycle(OSC, "xy", 4.0, 3.0, lam, BATHS)).global_figure
        eta_sp = evaluate_cycle(standard_cycle(SPIN, "xy", 4.0, 3.0, lam, BATHS)).global_figure
        sums.append((eta_os - eta_uc) + (eta_sp - eta_uc))
    ratio = sums[1] / sums[0]
    assert 16.0 * 0.8 < ratio < 16.0 * 1.2


def test_perturbative_predictions_reduce_to_uncoupled():
    assert perturbative_prediction("xy-engine-os", 4.0, 3.0, BATHS, 0.0) == 0.25
    assert perturbative_prediction("XX-engine-sp", 4.0, 3.0, BATHS, 0.0) == 0.25
    assert perturbative_prediction("xx-fridge-os", 5.0, 2.0, BATHS, 0.0) == pytest.approx(2.0 / 3.0)
    with pytest.raises(UnknownModel):
        perturbative_prediction("zz-engine-os", 4.0, 3.0, BATHS, 0.1)


def test_perturbative_difference_formulas_match_expansions():
    # the printed difference formulas must agree with subtracting the two
    # second-order expansions
    rng = np.random.default_rng(8)
    for _ in range(30):
        omega = rng.uniform(2.0, 7.0)
        omega_prime = omega * rng.uniform(0.4, 0.9)
        t_c = rng.uniform(0.5, 1.5)
        baths = BathPair(t_c * rng.uniform(1.5, 3.0), t_c)
        lam = 0.05
        gap = perturbative_prediction("xx-engine-os", omega, omega_prime, baths, lam) - (
            perturbative_prediction("xx-engine-sp", omega, omega_prime, baths, lam)
        )
        assert gap == pytest.approx(
            xx_efficiency_difference(omega, omega_prime, baths, lam), rel=1e-10
        )
        gap = perturbative_prediction("xx-fridge-sp", omega, omega_prime, baths, lam) - (
            perturbative_prediction("xx-fridge-os", omega, omega_prime, baths, lam)
        )
        assert gap == pytest.approx(
            xx_cop_difference(omega, omega_prime, baths, lam), rel=1e-10
        )


def test_perturbative_prediction_quartic_convergence():
    # |exact - second order| must shrink ~16x when lambda halves from 2e-2
    cases = [
        ("xx-engine-os", OSC, "xx", 4.0, 3.0),
        ("xx-engine-sp", SPIN, "xx", 4.0, 3.0),
        ("xx-fridge-os", OSC, "xx", 5.0, 2.0),
        ("xx-fridge-sp", SPIN, "xx", 5.0, 2.0),
        ("xy-engine-os", OSC, "xy", 4.0, 3.0),
        ("xy-engine-sp", SPIN, "xy", 4.0, 3.0),
        ("xy-fridge-os", OSC, "xy", 5.0, 2.0),
        ("xy-fridge-sp", SPIN, "xy", 5.0, 2.0),
    ]
    for tag, kind, model, omega, omega_prime in cases:
        errs = []
        for lam in (0.01, 0.02):
            exact = evaluate_cycle(
                standard_cycle(kind, model, omega, omega_prime, lam, BATHS)
            ).global_figure
            errs.append(abs(exact - perturbative_prediction(tag, omega, omega_prime, BATHS, lam)))
        ratio = errs[1] / errs[0]
        assert 16.0 * 0.8 < ratio < 16.0 * 1.2, (tag, ratio)


def test_efficiency_gap_prediction_is_positive():
    assert xx_efficiency_difference(4.0, 3.0, BATHS, 0.1) > 0
    assert xx_cop_difference(5.0, 2.0, BATHS, 0.1) > 0


def test_occupation_relaxation():
    assert occupation_relaxation(2.0, 0.5, 1.3, 0.0) == 2.0
    assert occupation_relaxation(2.0, 0.5, 1.3, 1e9) == pytest.approx(0.5)
    assert occupation_relaxation(2.0, 0.5, 1.0, math.log(2.0)) == pytest.approx(1.25, rel=1e-14)
    with pytest.raises(DomainError):
        occupation_relaxation(2.0, 0.5, -1.0, 1.0)
    # |N(t) - Neq| strictly decreasing
    ts = np.linspace(0.0, 5.0, 40)
    gaps = [abs(occupation_relaxation(2.0, 0.5, 0.7, t) - 0.5) for t in ts]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_extreme_parameter_corners():
    # sweeps reach deep-cold and near-classical corners; everything must
    # stay finite with the energy balance intact
    corners = [
        (BathPair(1e6, 1e-6), 4.0, 3.0, 1.0),
        (BathPair(2e-6, 1e-6), 8.0, 7.0, 1.0),
        (BathPair(2e6, 1e6), 4.0, 3.0, 1.0),
        (BathPair(2.0, 1.0), 9000.0, 8000.0, 100.0),
        (BathPair(2.0, 1.0), 2e-7, 1.5e-7, 1e-8),
    ]
    for baths, omega, omega_prime, lam in corners:
        for kind in (OSC, SPIN):
            result = evaluate_cycle(standard_cycle(kind, "xx", omega, omega_prime, lam, baths))
            for mode in result.modes:
                assert math.isfinite(mode.q_h) and math.isfinite(mode.q_c)
                assert mode.w == pytest.approx(mode.q_h + mode.q_c, abs=1e-300)
            if result.regime is Regime.ENGINE:
                assert result.global_figure <= baths.carnot_efficiency + 1e-12


def test_coth_stability():
    assert coth(1e-10) == pytest.approx(1e10, rel=1e-6)
    assert coth(50.0) == pytest.approx(1.0, rel=1e-15)
    assert coth(800.0) == 1.0  # no overflow
    # both branches agree with 1/x + x/3 near the crossover
    for x in (0.9999e-8, 1.0001e-8):
        assert coth(x) == pytest.approx(1.0 / x + x / 3.0, rel=1e-12)
    arr = coth(np.array([1e-12, 1.0, 100.0]))
    assert arr.shape == (3,)
