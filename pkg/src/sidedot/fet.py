"""Transistor compact model and the series dot-transistor circuit solve.

The transistor is the long-channel linear-region model

    I_D = beta * (V_ov - V_ds / 2) * V_ds,   beta = (mu W / L) * (eps / EOT)

clamped to its saturation value ``beta * V_ov^2 / 2`` above ``V_ds = V_ov``
(the parabola would otherwise bend down unphysically; the clamp is
unreachable in the intended micro-volt operating range).

The series connection splits the applied bias as ``V_D = V_out + V_ds``
with ``V_out`` across the dot device, and the operating point solves
``I_dot(V_out) = I_fet(V_D - V_out)``.  Because the dot device shows
negative differential conductance the load line can intersect it more than
once; the solver therefore brackets all sign changes of the Kirchhoff
residual on a scan grid and picks the root closest to a warm start
(continuation along a bias sweep) or the smallest root on a cold start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from scipy.optimize import brentq

from .device import DeviceParams, MeasurementCase
from .errors import BracketError, ConvergenceError, SweepError
from .transport import ABS_FLOOR_A, REL_TOL, total_current

__all__ = [
    "FetParams",
    "fet_current",
    "CircuitSolution",
    "solve_series",
    "vout_curve",
    "vout_spread",
]

# Kirchhoff residual tolerance: |I_dot - I_fet| <= max(REL * I, FLOOR).
_RESIDUAL_REL = 1e-6
_RESIDUAL_FLOOR_A = 1e-16
_SCAN_PANELS = 64


@dataclass(frozen=True)
class FetParams:
    """Compact-model transistor parameters (SI units)."""

    gate_length: float    # m
    gate_width: float     # m
    mobility: float       # m^2 / (V s)
    eot: float            # m, equivalent oxide thickness
    permittivity: float   # F / m
    overdrive: float      # V, V_g - V_th
    enabled: bool = True

    def __post_init__(self):
        if self.enabled:
            for name in ("gate_length", "gate_width", "mobility", "eot",
                         "permittivity", "overdrive"):
                if getattr(self, name) <= 0:
                    raise ValueError(f"fet parameter {name} must be positive")

    @property
    def beta(self) -> float:
        """Gain factor (mu W / L) * (eps / EOT) in A/V^2."""
        if not self.enabled:
            raise ValueError("fet is disabled; it has no gain factor")
        return (self.mobility * self.gate_width / self.gate_length) * (
            self.permittivity / self.eot
        )

    @staticmethod
    def disabled() -> "FetParams":
        """Placeholder for runs without a series transistor."""
        return FetParams(
            gate_length=1.0, gate_width=1.0, mobility=1.0, eot=1.0,
            permittivity=1.0, overdrive=1.0, enabled=False,
        )

    @staticmethod
    def long_channel(gate_length: float = 1e-6, overdrive: float = 0.1) -> "FetParams":
        """1 um / 80 nm device, 1000 cm^2/Vs, 1 nm EOT, eps = 3.9 eps_0."""
        return FetParams(
            gate_length=gate_length,
            gate_width=80e-9,
            mobility=0.1,
            eot=1e-9,
            permittivity=3.9 * 8.854e-12,
            overdrive=overdrive,
        )


def fet_current(v_ds: float, fet: FetParams) -> float:
    """Drain current of the transistor at ``v_ds`` volts, in amperes."""
    if not fet.enabled:
        raise ValueError("fet is disabled; bypass the transistor instead")
    if v_ds < 0:
        raise ValueError("v_ds must be non-negative")
    if v_ds >= fet.overdrive:
        return fet.beta * fet.overdrive**2 / 2.0
    return fet.beta * (fet.overdrive - v_ds / 2.0) * v_ds


@dataclass(frozen=True)
class CircuitSolution:
    """Self-consistent operating point of the series circuit."""

    v_d: float       # total applied bias, V
    v_out: float     # drop across the dot device, V
    v_ds: float      # drop across the transistor, V (= v_d - v_out)
    current: float   # A
    residual: float  # A, I_dot(v_out) - I_fet(v_ds)


def _solve_load_line(
    dot_current: Callable[[float], float],
    fet: FetParams,
    v_d: float,
    warm_start: CircuitSolution | None,
) -> CircuitSolution:
    """Find v_out in [0, v_d] with dot_current(v_out) = fet_current(v_d - v_out)."""

    def residual(v_out: float) -> float:
        return dot_current(v_out) - fet_current(v_d - v_out, fet)

    def finish(v_out: float) -> CircuitSolution:
        i_dot = dot_current(v_out)
        r = i_dot - fet_current(v_d - v_out, fet)
        # Newton polish with a finite-difference derivative.
        for _ in range(4):
            if abs(r) <= max(_RESIDUAL_REL * abs(i_dot), _RESIDUAL_FLOOR_A):
                break
            h = max(1e-12, 1e-7 * v_d)
            drdv = (residual(min(v_out + h, v_d)) - residual(max(v_out - h, 0.0))) / (
                min(v_out + h, v_d) - max(v_out - h, 0.0)
            )
            if drdv == 0.0:
                break
            step = r / drdv
            candidate = min(max(v_out - step, 0.0), v_d)
            r_new = residual(candidate)
            if abs(r_new) >= abs(r):
                break
            v_out, r = candidate, r_new
        if abs(r) > max(_RESIDUAL_REL * abs(i_dot), _RESIDUAL_FLOOR_A):
            raise ConvergenceError(
                f"residual {r:.3e} A above tolerance at v_d={v_d:g} V",
                best_bracket=(v_out, v_out),
            )
        i_dot = dot_current(v_out)
        return CircuitSolution(
            v_d=v_d,
            v_out=v_out,
            v_ds=v_d - v_out,
            current=i_dot,
            residual=i_dot - fet_current(v_d - v_out, fet),
        )

    if v_d == 0.0:
        return CircuitSolution(v_d=0.0, v_out=0.0, v_ds=0.0,
                               current=dot_current(0.0), residual=0.0)

    # Warm path: expand a bracket around the previous operating point.
    if warm_start is not None:
        center = min(max(warm_start.v_out, 0.0), v_d)
        half = max(4e-6, 0.002 * v_d)
        while half < 2.0 * v_d:
            a, b = max(center - half, 0.0), min(center + half, v_d)
            ra, rb = residual(a), residual(b)
            if ra == 0.0:
                return finish(a)
            if rb == 0.0:
                return finish(b)
            if ra * rb < 0:
                return finish(brentq(residual, a, b, xtol=1e-12))
            if a == 0.0 and b == v_d:
                break
            half *= 5.0
        # fall through to the full scan

    # Cold path: scan, bracket every sign change, keep candidate roots.
    grid = [v_d * k / _SCAN_PANELS for k in range(_SCAN_PANELS + 1)]
    values = [residual(v) for v in grid]
    roots = []
    for (a, ra), (b, rb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if ra == 0.0:
            roots.append(a)
        elif ra * rb < 0:
            roots.append(brentq(residual, a, b, xtol=1e-12))
    if values[-1] == 0.0:
        roots.append(grid[-1])
    if not roots:
        raise BracketError(
            f"no sign change of the Kirchhoff residual on [0, {v_d:g}] V "
            f"({_SCAN_PANELS} panels scanned)"
        )
    if warm_start is not None:
        root = min(roots, key=lambda r: abs(r - warm_start.v_out))
    else:
        root = min(roots)
    return finish(root)


def solve_series(
    v_d: float,
    case: MeasurementCase,
    params: DeviceParams,
    fet: FetParams,
    warm_start: CircuitSolution | None = None,
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> CircuitSolution:
    """Operating point of the dot device in series with the transistor.

    With the transistor disabled the full bias drops across the dot device.
    Under negative differential conductance several operating points can
    coexist; a ``warm_start`` selects the root closest to the previous
    solution, otherwise the smallest ``v_out`` root is returned.
    """
    if v_d < 0:
        raise ValueError("bias v_d must be non-negative")
    if not fet.enabled:
        i = total_current(v_d, case, params, rel_tol, abs_floor)
        return CircuitSolution(v_d=v_d, v_out=v_d, v_ds=0.0, current=i, residual=0.0)

    def dot_current(v_out: float) -> float:
        return total_current(v_out, case, params, rel_tol, abs_floor)

    return _solve_load_line(dot_current, fet, v_d, warm_start)


def vout_curve(
    case: MeasurementCase,
    params: DeviceParams,
    fet: FetParams,
    grid: Iterable[float],
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> list[CircuitSolution]:
    """Continuation sweep of the circuit along an increasing bias grid.

    Each point warm-starts from the previous solution.  A failed point
    aborts the sweep; the raised error carries the completed points.
    """
    grid = list(grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    solutions: list[CircuitSolution] = []
    warm = None
    for v in grid:
        try:
            warm = solve_series(v, case, params, fet, warm_start=warm,
                                rel_tol=rel_tol, abs_floor=abs_floor)
        except Exception as exc:  # propagate with partial results attached
            raise SweepError(
                f"continuation sweep failed at v_d={v:g} V: {exc}",
                partial=solutions,
                cause=exc,
            ) from exc
        solutions.append(warm)
    return solutions


def vout_spread(curves: dict[MeasurementCase, list[CircuitSolution]]) -> list[float]:
    """Case-to-case spread of v_out at each grid index.

    This is the default reduction for "how much does the output voltage
    distinguish the qubit states".  Alternative reductions (deviation from
    the transistor-free value ``v_out = v_d``, i.e. ``v_ds`` itself, or
    deviation from linearity) can be computed directly from the solutions.
    """
    lengths = {len(c) for c in curves.values()}
    if len(lengths) != 1:
        raise ValueError("all curves must share one grid")
    (n,) = lengths
    spreads = []
    for k in range(n):
        vals = [curves[case][k].v_out for case in curves]
        spreads.append(max(vals) - min(vals))
    return spreads
