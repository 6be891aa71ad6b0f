"""Readout quality metrics: contrast, noise, measurement and decoherence times.

A measurement must resolve the current contrast ``delta_i`` between a case
current and the reference against shot noise ``S = 2 e <I>`` (classical
worst case, with ``<I>`` the larger of the two currents), which takes

    t_meas = 4 S / delta_i^2.

The backaction on the qubits is the golden-rule rate of real tunneling
events between the center dot and the side levels.  Per active side dot
(level L, coupling W) the rate is

    1/t_dec = (|W|^2 / hbar) * [ f * F>(L - w01) / ((L - w01 - E2)^2 + G^2/4)
              + (1 - f) * F<(L + w01) / ((L + w01 - E2)^2 + G^2/4) ]

with ``w01 = |L_1 - E2|`` the level detuning at the operating bias, ``f``
the occupancy of the side level, and the lead emission/absorption factors

    F<(w) = G_L f_L(w) O(w - B_S) + G_R f_R(w) O(w - B_D)      (electrons in)
    F>(w) = G_L (1-f_L(w)) O(w - B_S) + G_R (1-f_R(w)) O(w - B_D)  (out)

counting only lead states that exist above the sharp band bottoms, the
same lead model the transport integral uses.  In measurement mode the side
(singlet) levels sit above both electrochemical potentials, so their
steady-state occupancy is empty: ``occupancy_f`` defaults to 0.  The
ensemble-average convention ``1/2`` is available as a parameter.

The second side dot's term is evaluated, by default, with its own level in
the denominators and lead arguments (``second_brace="e3"``); the variant
``"printed"`` replaces that level with the center level ``E2`` in both
places, which collapses the denominator to ``w01^2 + G^2/4``.

``t_dec`` is capped at 1 us; the measurement count is ``t_dec / t_meas``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .constants import CONSTANTS
from .device import (
    CaseConfig,
    DeviceParams,
    MeasurementCase,
    SideDot,
    SpinChannel,
    bias_geometry,
    case_config,
)
from .fet import CircuitSolution, FetParams, solve_series
from .transport import ABS_FLOOR_A, REL_TOL, fermi, total_current

__all__ = [
    "MetricsRecord",
    "DecoherenceInput",
    "shot_noise",
    "delta_current",
    "t_meas",
    "decoherence_input",
    "decoherence_rate",
    "t_dec",
    "measurement_count",
    "metrics_sweep",
    "T_DEC_CAP_S",
    "DEFAULT_SINGLET_OCCUPANCY",
]

T_DEC_CAP_S = 1e-6
DEFAULT_SINGLET_OCCUPANCY = 0.0
SECOND_BRACE_VARIANTS = ("e3", "printed")


@dataclass(frozen=True)
class MetricsRecord:
    """All readout metrics of one case at one operating point."""

    case: MeasurementCase
    v_d: float            # V
    delta_i: float        # A
    mean_current: float   # A
    shot_noise: float     # A^2 / Hz
    t_meas: float         # s (may be +inf when delta_i == 0)
    t_dec: float          # s, capped at T_DEC_CAP_S
    count: float          # t_dec / t_meas
    delta: float | None = None  # eV, Zeeman splitting of the sweep row


@dataclass(frozen=True)
class DecoherenceInput:
    """Assembled ingredients of the golden-rule backaction rate."""

    omega01: float                      # eV, |L_1 - E2| at the operating bias
    occupancy_f: float                  # side-level occupancy, in [0, 1]
    dots: tuple[SideDot, ...]           # active side levels and couplings
    e2: float                           # eV
    mu_s: float
    mu_d: float
    band_bottom_s: float
    band_bottom_d: float
    gamma_l: float
    gamma_r: float
    temperature: float

    def __post_init__(self):
        if not 0.0 <= self.occupancy_f <= 1.0:
            raise ValueError("occupancy_f must lie in [0, 1]")
        if self.omega01 < 0:
            raise ValueError("omega01 must be non-negative")


def shot_noise(current: float) -> float:
    """Classical shot noise 2 e |I| in A^2/Hz."""
    return 2.0 * CONSTANTS.electron_charge * abs(current)


def delta_current(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    fet: FetParams | None = None,
    warm_starts: tuple[CircuitSolution | None, CircuitSolution | None] = (None, None),
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> tuple[float, float, tuple[CircuitSolution | None, CircuitSolution | None]]:
    """Contrast against the reference and the worst-case mean current.

    With a transistor present both currents come from the series solve at
    the same applied bias.  Returns ``(delta_i, mean_current, solutions)``
    where the solutions (case, reference) can warm-start the next bias.
    """
    if case is MeasurementCase.REFERENCE:
        raise ValueError("delta_current needs a measurement case, not the reference")
    if fet is not None and fet.enabled:
        sol_case = solve_series(v_d, case, params, fet, warm_starts[0],
                                rel_tol, abs_floor)
        sol_ref = solve_series(v_d, MeasurementCase.REFERENCE, params, fet,
                               warm_starts[1], rel_tol, abs_floor)
        i_case, i_ref = sol_case.current, sol_ref.current
        solutions = (sol_case, sol_ref)
    else:
        i_case = total_current(v_d, case, params, rel_tol, abs_floor)
        i_ref = total_current(v_d, MeasurementCase.REFERENCE, params, rel_tol, abs_floor)
        solutions = (None, None)
    return abs(i_case - i_ref), max(i_case, i_ref), solutions


def t_meas(delta_i: float, noise: float) -> float:
    """Measurement time 4 S / delta_i^2; infinite for vanishing contrast."""
    if delta_i < 0 or noise < 0:
        raise ValueError("delta_i and noise must be non-negative")
    if delta_i == 0.0:
        return math.inf
    return 4.0 * noise / delta_i**2


def decoherence_input(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    occupancy_f: float = DEFAULT_SINGLET_OCCUPANCY,
    config: CaseConfig | None = None,
) -> DecoherenceInput:
    """Assemble the rate ingredients for the case's active spin channel."""
    cfg = config if config is not None else case_config(case, params)
    spin = cfg.active_spin
    # Reference: no couplings, rate is zero; the geometry spin is moot.
    bias = bias_geometry(params, v_d, spin or SpinChannel.UP)
    dots = cfg.for_spin(spin) if spin is not None else ()
    omega01 = abs(dots[0].level - bias.e2) if dots else 0.0
    return DecoherenceInput(
        omega01=omega01,
        occupancy_f=occupancy_f,
        dots=tuple(dots),
        e2=bias.e2,
        mu_s=bias.mu_s,
        mu_d=bias.mu_d,
        band_bottom_s=bias.band_bottom_s,
        band_bottom_d=bias.band_bottom_d,
        gamma_l=params.gamma_l,
        gamma_r=params.gamma_r,
        temperature=params.temperature,
    )


def _lead_factor(inp: DecoherenceInput, omega: float, empty: bool) -> float:
    """F>(w) for empty=True, F<(w) otherwise, with sharp band bottoms."""
    out = 0.0
    if omega > inp.band_bottom_s:
        f = fermi(omega, inp.mu_s, inp.temperature)
        out += inp.gamma_l * ((1.0 - f) if empty else f)
    if omega > inp.band_bottom_d:
        f = fermi(omega, inp.mu_d, inp.temperature)
        out += inp.gamma_r * ((1.0 - f) if empty else f)
    return out


def decoherence_rate(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    occupancy_f: float = DEFAULT_SINGLET_OCCUPANCY,
    second_brace: str = "e3",
    config: CaseConfig | None = None,
) -> float:
    """Uncapped golden-rule backaction rate in 1/s.

    Strictly increasing in each squared coupling; zero for the reference.
    """
    if second_brace not in SECOND_BRACE_VARIANTS:
        raise ValueError(f"second_brace must be one of {SECOND_BRACE_VARIANTS}")
    inp = decoherence_input(case, v_d, params, occupancy_f, config)
    if not inp.dots:
        return 0.0
    gs2_4 = (inp.gamma_l + inp.gamma_r) ** 2 / 4.0
    rate = 0.0
    for k, dot in enumerate(inp.dots):
        anchor = dot.level if (k == 0 or second_brace == "e3") else inp.e2
        lo, hi = anchor - inp.omega01, anchor + inp.omega01
        term = inp.occupancy_f * _lead_factor(inp, lo, empty=True) / (
            (lo - inp.e2) ** 2 + gs2_4
        )
        term += (1.0 - inp.occupancy_f) * _lead_factor(inp, hi, empty=False) / (
            (hi - inp.e2) ** 2 + gs2_4
        )
        rate += dot.coupling**2 * term / CONSTANTS.hbar
    return rate


def t_dec(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    occupancy_f: float = DEFAULT_SINGLET_OCCUPANCY,
    second_brace: str = "e3",
    cap: float = T_DEC_CAP_S,
) -> float:
    """Backaction decoherence time in seconds, capped at ``cap``."""
    rate = decoherence_rate(case, v_d, params, occupancy_f, second_brace)
    if rate <= 0.0:
        return cap
    return min(cap, 1.0 / rate)


def measurement_count(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    fet: FetParams | None = None,
    occupancy_f: float = DEFAULT_SINGLET_OCCUPANCY,
    second_brace: str = "e3",
    warm_starts: tuple[CircuitSolution | None, CircuitSolution | None] = (None, None),
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> tuple[MetricsRecord, tuple[CircuitSolution | None, CircuitSolution | None]]:
    """Assemble the full metrics record at one operating point.

    Returns the record plus the circuit solutions for warm-starting the
    next point of a sweep.
    """
    di, mean_i, sols = delta_current(case, v_d, params, fet, warm_starts,
                                     rel_tol, abs_floor)
    noise = shot_noise(mean_i)
    tm = t_meas(di, noise)
    td = t_dec(case, v_d, params, occupancy_f, second_brace)
    count = 0.0 if math.isinf(tm) else td / tm
    record = MetricsRecord(
        case=case,
        v_d=v_d,
        delta_i=di,
        mean_current=mean_i,
        shot_noise=noise,
        t_meas=tm,
        t_dec=td,
        count=count,
        delta=params.delta,
    )
    return record, sols


def _assemble_record(
    case: MeasurementCase,
    v_d: float,
    params: DeviceParams,
    i_case: float,
    i_ref: float,
    occupancy_f: float,
    second_brace: str,
) -> MetricsRecord:
    di = abs(i_case - i_ref)
    mean_i = max(i_case, i_ref)
    noise = shot_noise(mean_i)
    tm = t_meas(di, noise)
    td = t_dec(case, v_d, params, occupancy_f, second_brace)
    return MetricsRecord(
        case=case, v_d=v_d, delta_i=di, mean_current=mean_i, shot_noise=noise,
        t_meas=tm, t_dec=td, count=0.0 if math.isinf(tm) else td / tm,
        delta=params.delta,
    )


def metrics_sweep(
    cases: Sequence[MeasurementCase],
    params: DeviceParams,
    fet: FetParams | None,
    v_d: float,
    delta_grid: Iterable[float],
    reduction: str = "none",
    vd_grid: Sequence[float] | None = None,
    occupancy_f: float = DEFAULT_SINGLET_OCCUPANCY,
    second_brace: str = "e3",
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> list[MetricsRecord]:
    """Metrics over a Zeeman-splitting grid, one record per (delta, case).

    ``reduction="none"`` evaluates at the single bias ``v_d``;
    ``reduction="max_over_vd"`` sweeps ``vd_grid`` and keeps, per
    (delta, case), the record with the largest measurement count (the
    figure-of-merit of the low-bias operating window).

    The reference current is computed once per operating point and shared
    by all cases; circuit solves warm-start along the bias and delta axes.
    """
    if reduction not in ("none", "max_over_vd"):
        raise ValueError("reduction must be 'none' or 'max_over_vd'")
    if reduction == "max_over_vd" and not vd_grid:
        raise ValueError("max_over_vd reduction needs a vd_grid")
    delta_grid = list(delta_grid)
    cases = [c for c in cases if c is not MeasurementCase.REFERENCE]
    use_fet = fet is not None and fet.enabled
    biases = list(vd_grid) if reduction == "max_over_vd" else [v_d]

    best: dict[tuple[float, MeasurementCase], MetricsRecord] = {}
    warm: dict[MeasurementCase | str, CircuitSolution | None] = {}
    for delta in delta_grid:
        p = params.with_(delta=float(delta))
        for v in biases:
            if use_fet:
                sol_ref = solve_series(v, MeasurementCase.REFERENCE, p, fet,
                                       warm.get("ref"), rel_tol, abs_floor)
                warm["ref"] = sol_ref
                i_ref = sol_ref.current
            else:
                i_ref = total_current(v, MeasurementCase.REFERENCE, p,
                                      rel_tol, abs_floor)
            for case in cases:
                if use_fet:
                    sol = solve_series(v, case, p, fet, warm.get(case),
                                       rel_tol, abs_floor)
                    warm[case] = sol
                    i_case = sol.current
                else:
                    i_case = total_current(v, case, p, rel_tol, abs_floor)
                rec = _assemble_record(case, v, p, i_case, i_ref,
                                       occupancy_f, second_brace)
                key = (float(delta), case)
                if key not in best or rec.count > best[key].count:
                    best[key] = rec

    # Emit grouped by case, then delta, matching the CSV row order.
    return [best[(float(d), c)] for c in cases for d in delta_grid]
