"""Acceptance suite: one test per criterion, printing a PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and measured values.  The expensive artifacts (full I-V families,
continuation sweeps, metrics sweeps) are shared through session fixtures.
"""

import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from sidedot import (
    CONSTANTS,
    FetParams,
    MeasurementCase,
    SpinChannel,
    bias_geometry,
    case_config,
    decoherence_rate,
    end_of_peak_bias,
    iv_curve,
    metrics_sweep,
    onset_bias,
    spin_current,
    t_dec,
    transmission,
    vout_curve,
    vout_spread,
)
from sidedot.device import ALL_CASES, MEASUREMENT_CASES
from sidedot.oracles import breit_wigner_plateau_current, matrix_transmission

UV = 1e-6
NA = 1e-9

# wall-clock of the expensive shared artifacts, keyed by fixture name, so
# the runtime clauses account for work done inside fixtures
TIMINGS: dict[str, float] = {}


def report(number: int, name: str, clauses: list[tuple[str, bool]],
           elapsed: float | None = None) -> None:
    ok = all(passed for _, passed in clauses)
    stamp = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"\nCRITERION {number} [{name}]: {'PASS' if ok else 'FAIL'}{stamp}")
    for text, passed in clauses:
        print(f"    {'ok  ' if passed else 'FAIL'} {text}")
    assert ok, f"criterion {number} ({name}) failed: " + "; ".join(
        text for text, passed in clauses if not passed)


# --------------------------------------------------------------------------
# shared expensive artifacts


@pytest.fixture(scope="session")
def fig3_grid():
    return list(np.linspace(0.0, 3e-3, 301))


@pytest.fixture(scope="session")
def fig3_family(preset_device, fig3_grid):
    t0 = time.perf_counter()
    out = {case: iv_curve(case, preset_device, fig3_grid) for case in ALL_CASES}
    TIMINGS["fig3_family"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def fig7_curves(preset_device, fet_1um, fet_10um, fig3_grid):
    t0 = time.perf_counter()
    out = {}
    for fet, key in ((fet_1um, "1um"), (fet_10um, "10um")):
        out[key] = {case: vout_curve(case, preset_device, fet, fig3_grid)
                    for case in ALL_CASES}
    TIMINGS["fig7_curves"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def delta_grid():
    return list(np.linspace(5e-5, 4e-4, 36))


@pytest.fixture(scope="session")
def fig6_metrics(preset_device, fet_1um, delta_grid):
    t0 = time.perf_counter()
    out = metrics_sweep(MEASUREMENT_CASES, preset_device, fet_1um, 2.225e-3,
                        delta_grid)
    TIMINGS["fig6_metrics"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def fig5_metrics(preset_device, fet_1um, delta_grid):
    window = list(np.linspace(2e-5, 5e-4, 25))
    t0 = time.perf_counter()
    out = metrics_sweep(MEASUREMENT_CASES, preset_device, fet_1um, 2.225e-3,
                        delta_grid, reduction="max_over_vd", vd_grid=window)
    TIMINGS["fig5_metrics"] = time.perf_counter() - t0
    return out


# --------------------------------------------------------------------------


def test_criterion_1_oracle_equivalence(preset_device):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240117)
    worst = 0.0
    for _ in range(200):
        p = preset_device.with_(
            w12=float(rng.uniform(0, 3e-4)), w23=float(rng.uniform(0, 3e-4)),
            delta=float(rng.uniform(0, 4e-4)))
        case = list(MeasurementCase)[int(rng.integers(0, 5))]
        cfg = case_config(case, p)
        spin = cfg.active_spin or SpinChannel.UP
        bias = bias_geometry(p, float(rng.uniform(0, 3e-3)), spin)
        w = float(rng.uniform(-1e-3, 4e-3))
        t_formula = transmission(w, bias, cfg, p)
        t_matrix = matrix_transmission(w, bias, cfg, p)
        worst = max(worst, abs(t_formula - t_matrix) / max(t_matrix, 1e-300))
    # the preset point itself
    cfg = case_config(MeasurementCase.CASE_III, preset_device)
    bias = bias_geometry(preset_device, 1.5e-3, SpinChannel.UP)
    for w in np.linspace(-0.5e-3, 3.5e-3, 41):
        t_formula = transmission(float(w), bias, cfg, preset_device)
        t_matrix = matrix_transmission(float(w), bias, cfg, preset_device)
        worst = max(worst, abs(t_formula - t_matrix) / max(t_matrix, 1e-300))
    elapsed = time.perf_counter() - t0
    report(1, "oracle-equivalence", [
        (f"max relative deviation {worst:.2e} <= 1e-10", worst <= 1e-10),
        (f"runtime {elapsed:.2f}s < 1s", elapsed < 1.0),
    ], elapsed)


def test_criterion_2_breit_wigner_limit(bare_device):
    t0 = time.perf_counter()
    bias = bias_geometry(bare_device, 1.5e-3, SpinChannel.UP)
    from sidedot import CaseConfig
    t_peak = transmission(bias.e2, bias, CaseConfig(), bare_device)
    closed = breit_wigner_plateau_current(bare_device)
    i_plateau = spin_current(1.5e-3, SpinChannel.UP, MeasurementCase.REFERENCE,
                             bare_device).value
    rel = abs(i_plateau - closed) / closed
    elapsed = time.perf_counter() - t0
    report(2, "breit-wigner-limit", [
        (f"peak transmission {t_peak:.15f} = 1 within 1e-12",
         abs(t_peak - 1.0) <= 1e-12),
        (f"plateau {i_plateau/NA:.4f} nA vs closed form {closed/NA:.4f} nA "
         f"(rel {rel:.2e} <= 0.5%)", rel <= 5e-3),
        (f"plateau about 0.24 nA, under a few hundred pA",
         0.2e-9 < i_plateau < 0.3e-9),
        (f"runtime {elapsed:.2f}s < 5s", elapsed < 5.0),
    ], elapsed)


def test_criterion_3_onset_splitting(bare_device):
    t0 = time.perf_counter()
    plateau = breit_wigner_plateau_current(bare_device)
    kt = CONSTANTS.boltzmann * bare_device.temperature  # as volts
    tol = 4 * kt

    def crossing(spin):
        def f(v):
            return spin_current(v, spin, MeasurementCase.REFERENCE,
                                bare_device).value - 0.1 * plateau
        return brentq(f, 1e-6, 1.0e-3, xtol=1e-10)

    v_up, v_dn = crossing(SpinChannel.UP), crossing(SpinChannel.DOWN)
    split = v_dn - v_up
    target = 2 * bare_device.delta
    off_up = abs(v_up - onset_bias(bare_device, SpinChannel.UP))
    off_dn = abs(v_dn - onset_bias(bare_device, SpinChannel.DOWN))
    elapsed = time.perf_counter() - t0
    # diagnostic: a 10% threshold sits 2*ln(9) = 4.39 kT of bias down the
    # Fermi tail (lever arm 1/2), structurally outside a 4 kT allowance
    print(f"\n    note: 10% crossing offset floor is 2*ln(9)*kT = "
          f"{2 * math.log(9) * kt / UV:.1f} uV of bias before corrections")
    report(3, "onset-splitting", [
        (f"splitting {split/UV:.1f} uV vs 2*delta = {target/UV:.1f} uV "
         f"within {tol/UV:.1f} uV", abs(split - target) <= tol),
        (f"up onset at {v_up/UV:.1f} uV, {off_up/UV:.1f} uV from 40 uV "
         f"(tol {tol/UV:.1f} uV)", off_up <= tol),
        (f"down onset at {v_dn/UV:.1f} uV, {off_dn/UV:.1f} uV from 360 uV "
         f"(tol {tol/UV:.1f} uV)", off_dn <= tol),
        (f"runtime {elapsed:.2f}s < 10s", elapsed < 10.0),
    ], elapsed)


def test_criterion_4_ndc_end(preset_device, fig3_family, fig3_grid):
    t0 = time.perf_counter()
    grid = np.array(fig3_grid)
    v_end = end_of_peak_bias(preset_device)
    clauses = []
    for case, pts in fig3_family.items():
        tot = np.array([p.i_total for p in pts])
        ipk = int(tot.argmax())
        below = np.nonzero(tot[ipk:] < 0.5 * tot[ipk])[0]
        v50 = float(grid[ipk + below[0]]) if below.size else math.inf
        ok = abs(v50 - v_end) <= 0.2e-3
        clauses.append((f"{case.label}: below half peak at {v50*1e3:.3f} mV "
                        f"(target {v_end*1e3:.1f} +- 0.2 mV)", ok))

    # spin independence of the end: reference up and down cross half of
    # their own plateaus at the same bias
    plateau = breit_wigner_plateau_current(preset_device)

    def half_cross(spin):
        def f(v):
            return spin_current(v, spin, MeasurementCase.REFERENCE,
                                preset_device).value - 0.5 * plateau
        return brentq(f, 1.5e-3, 2.6e-3, xtol=1e-10)

    e_up, e_dn = half_cross(SpinChannel.UP), half_cross(SpinChannel.DOWN)
    clauses.append((f"reference spin ends identical: up {e_up*1e3:.5f} mV, "
                    f"down {e_dn*1e3:.5f} mV (|diff| {abs(e_up-e_dn)/UV:.2f} uV "
                    "<= 2 uV)", abs(e_up - e_dn) <= 2e-6))
    elapsed = time.perf_counter() - t0 + TIMINGS.get("fig3_family", 0.0)
    clauses.append((f"runtime {elapsed:.1f}s < 30s incl. curve family",
                    elapsed < 30.0))
    report(4, "ndc-end", clauses, elapsed)


def test_criterion_5_case_grouping(fig3_family):
    t0 = time.perf_counter()
    ref = fig3_family[MeasurementCase.REFERENCE]
    clauses = []
    for case, channel in ((MeasurementCase.CASE_I, "i_down"),
                          (MeasurementCase.CASE_II, "i_up")):
        pts = fig3_family[case]
        worst = max(abs(getattr(a, channel) - getattr(b, channel))
                    for a, b in zip(pts, ref))
        tol = max(a.quad_error + b.quad_error for a, b in zip(pts, ref))
        clauses.append(
            (f"{case.label}: inactive-channel deviation {worst:.2e} A within "
             f"quadrature tolerance {tol:.2e} A", worst <= tol))
    # and the active channel does differ
    worst_active = max(abs(a.i_up - b.i_up)
                       for a, b in zip(fig3_family[MeasurementCase.CASE_I], ref))
    clauses.append((f"case_i active channel contrast reaches "
                    f"{worst_active/NA:.3f} nA", worst_active > 0.05e-9))
    report(5, "case-grouping", clauses, time.perf_counter() - t0)


def test_criterion_6_measurement_count(fig6_metrics, fig5_metrics):
    t0 = time.perf_counter()
    clauses = []
    for case in MEASUREMENT_CASES:
        best = max(r.count for r in fig6_metrics if r.case is case)
        clauses.append(
            (f"fixed bias 2.225 mV: {case.label} max count {best:.1f} > 100",
             best > 100.0))
    expectations = {MeasurementCase.CASE_I: True, MeasurementCase.CASE_III: True,
                    MeasurementCase.CASE_II: False, MeasurementCase.CASE_IV: False}
    for case, should_exceed in expectations.items():
        best = max(r.count for r in fig5_metrics if r.case is case)
        ok = (best > 100.0) if should_exceed else (best < 100.0)
        rel = ">" if should_exceed else "<"
        clauses.append(
            (f"low-bias window: {case.label} max count {best:.1f} {rel} 100", ok))
    elapsed = (time.perf_counter() - t0 + TIMINGS.get("fig6_metrics", 0.0)
               + TIMINGS.get("fig5_metrics", 0.0))
    clauses.append((f"runtime {elapsed:.0f}s < 300s incl. both sweeps",
                    elapsed < 300.0))
    report(6, "measurement-count", clauses, elapsed)


def test_criterion_7_tdec_behavior(preset_device, bare_device, delta_grid):
    t0 = time.perf_counter()
    clauses = []
    td_bare = t_dec(MeasurementCase.CASE_I, 2.225e-3, bare_device)
    clauses.append((f"uncoupled device capped at exactly 1 us ({td_bare:.2e} s)",
                    td_bare == 1e-6))
    for case in MEASUREMENT_CASES:
        tds = [t_dec(case, 2.225e-3, preset_device.with_(delta=d))
               for d in delta_grid]
        non_increasing = all(b <= a + 1e-18 for a, b in zip(tds, tds[1:]))
        clauses.append(
            (f"{case.label}: t_dec non-increasing over the delta grid "
             f"({tds[0]:.2e} -> {tds[-1]:.2e} s)", non_increasing))
    # the uncapped rate of the up-channel cases strictly grows with delta
    for case in (MeasurementCase.CASE_I, MeasurementCase.CASE_III):
        rates = [decoherence_rate(case, 2.225e-3, preset_device.with_(delta=d))
                 for d in delta_grid]
        strict = all(b > a for a, b in zip(rates, rates[1:]))
        clauses.append(
            (f"{case.label}: uncapped backaction rate strictly increasing "
             f"({rates[0]:.2e} -> {rates[-1]:.2e} 1/s)", strict))
    report(7, "tdec-behavior", clauses, time.perf_counter() - t0)


def test_criterion_8_circuit(fig7_curves, fig3_grid):
    t0 = time.perf_counter()
    clauses = []
    worst_res = 0.0
    for key in ("1um", "10um"):
        for case, sols in fig7_curves[key].items():
            for s in sols:
                tol = max(1e-6 * abs(s.current), 1e-16)
                worst_res = max(worst_res, abs(s.residual) / tol)
    clauses.append((f"Kirchhoff residual within tolerance at every swept "
                    f"point (worst ratio {worst_res:.3f})", worst_res <= 1.0))
    spread_1 = max(vout_spread(fig7_curves["1um"]))
    spread_10 = max(vout_spread(fig7_curves["10um"]))
    ratio = spread_10 / spread_1 if spread_1 else math.inf
    clauses.append((f"L=1um case spread {spread_1/UV:.1f} uV < 50 uV",
                    spread_1 < 50e-6))
    clauses.append((f"L=10um case spread {spread_10/UV:.1f} uV > 500 uV "
                    "somewhere in the sweep", spread_10 > 500e-6))
    clauses.append((f"spread ratio {ratio:.1f} within [5, 20]",
                    5.0 <= ratio <= 20.0))
    elapsed = time.perf_counter() - t0 + TIMINGS.get("fig7_curves", 0.0)
    clauses.append((f"runtime {elapsed:.0f}s < 600s incl. continuation sweeps",
                    elapsed < 600.0))
    report(8, "circuit", clauses, elapsed)


def test_criterion_9_temperature_degradation(preset_device):
    t0 = time.perf_counter()
    window = list(np.linspace(2e-5, 5e-4, 25))
    deltas = list(np.linspace(5e-5, 4e-4, 12))
    results = {}
    for temperature in (0.1, 0.2):
        p = preset_device.with_(temperature=temperature)
        recs = metrics_sweep(MEASUREMENT_CASES, p, None, 2.225e-3, deltas,
                             reduction="max_over_vd", vd_grid=window)
        results[temperature] = (max(r.delta_i for r in recs),
                                max(r.count for r in recs))
    di_cold, count_cold = results[0.1]
    di_hot, count_hot = results[0.2]
    elapsed = time.perf_counter() - t0
    report(9, "temperature-degradation", [
        (f"max contrast {di_hot/NA:.4f} nA at 200 mK < {di_cold/NA:.4f} nA "
         "at 100 mK", di_hot < di_cold),
        (f"max count {count_hot:.1f} at 200 mK < {count_cold:.1f} at 100 mK",
         count_hot < count_cold),
    ], elapsed)


def test_criterion_10_numerical_robustness(preset_device):
    t0 = time.perf_counter()
    grid = list(np.linspace(0.0, 3e-3, 41))
    perturbed = preset_device.with_(
        delta_broadening=preset_device.delta_broadening / 2)
    worst = 0.0
    for case in ALL_CASES:
        base = iv_curve(case, preset_device, grid, rel_tol=1e-6)
        tight = iv_curve(case, perturbed, grid, rel_tol=1e-7)
        for a, b in zip(tight, base):
            denom = max(abs(b.i_total), 2e-18 / 1e-3)
            worst = max(worst, abs(a.i_total - b.i_total) / denom)
    elapsed = time.perf_counter() - t0
    report(10, "numerical-robustness", [
        (f"max relative current change {worst:.2e} < 1e-3 after halving the "
         "broadening and tightening the quadrature tenfold", worst < 1e-3),
    ], elapsed)
