"""Spin-resolved Landauer transport through the side-coupled dot chain.

The transmission of the center dot dressed by the side dots is

    T(w) = gamma_l * gamma_r / |w - e2 + i*(gamma_l+gamma_r)/2 - Sigma(w)|^2

with the side-dot self-energy ``Sigma(w) = sum_j |W_j|^2 / (w - E_j + i*d)``
(``d`` a small positive broadening).  With no side dots this is the
Breit-Wigner resonance; each side dot adds a Fano antiresonance pinned at
its level and a pair of hybridized transmission peaks.

The current per spin channel is the Landauer integral

    I = (e/h) * Int T(w) * [f_S(w) O(w - B_S) - f_D(w) O(w - B_D)] dw

where ``O`` is a sharp step at the respective band bottom.  The leads are
wide-band except for these bottoms; the source bottom riding the bias is
what terminates the resonant peak and produces the negative differential
conductance.  Integration runs in eV and the prefactor converts to amperes.

Quadrature is adaptive Gauss-Kronrod (QUADPACK's QAGP via
``scipy.integrate.quad``) with panel splits at every analytic feature:
the center level, the side levels, the hybridization points ``e2 +- W_eff``,
the real parts of the dressed poles, both electrochemical potentials and
both band bottoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import expit

from .constants import AMP_PER_EV, CONSTANTS
from .device import (
    BiasPoint,
    CaseConfig,
    DeviceParams,
    MeasurementCase,
    SideDot,
    SpinChannel,
    bias_geometry,
    case_config,
)
from .errors import QuadratureError

__all__ = [
    "fermi",
    "side_self_energy",
    "transmission",
    "SpinCurrent",
    "spin_current",
    "total_current",
    "IvPoint",
    "iv_curve",
    "REL_TOL",
    "ABS_FLOOR_A",
]

# Default quadrature tolerances: relative, plus an absolute floor in amperes.
REL_TOL = 1e-6
ABS_FLOOR_A = 1e-18

# Integration window extends this many k_B*T beyond the electrochemical
# extremes; Fermi tails beyond contribute < 5e-5 relative.
_WINDOW_KT = 10.0

_MAX_SUBDIVISIONS = 2000


def fermi(omega, mu, temperature: float):
    """Fermi-Dirac occupancy, numerically stable for any |omega - mu|.

    Accepts scalars or arrays for ``omega``/``mu``; saturates cleanly to
    0/1 far from the chemical potential (no overflow).
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    x = (np.asarray(omega) - mu) / (CONSTANTS.boltzmann * temperature)
    out = expit(-x)
    if np.ndim(omega) == 0 and np.ndim(mu) == 0:
        return float(out)
    return out


def side_self_energy(omega, dots: Sequence[SideDot], delta_broadening: float):
    """Self-energy of the center dot from the side levels.

    ``Sigma(w) = sum_j |W_j|^2 / (w - E_j + i d)``; an empty configuration
    gives 0.  Two dots at the same level with couplings (W, W) add up to a
    single effective coupling sqrt(2) * W.
    """
    if delta_broadening <= 0:
        raise ValueError("delta_broadening must be positive")
    w = np.asarray(omega, dtype=float)
    sigma = np.zeros(w.shape, dtype=complex)
    for dot in dots:
        sigma += dot.coupling**2 / (w - dot.level + 1j * delta_broadening)
    if np.ndim(omega) == 0:
        return complex(sigma)
    return sigma


def transmission(omega, bias: BiasPoint, config: CaseConfig, params: DeviceParams):
    """Transmission probability of the dressed center dot at energy ``omega``.

    Bounded by [0, 1]; equals the bare Breit-Wigner form for an empty
    configuration and vanishes on the side levels (antiresonance) as the
    broadening goes to zero.
    """
    dots = config.for_spin(bias.spin)
    sigma = side_self_energy(omega, dots, params.delta_broadening)
    denom = np.asarray(omega, dtype=complex) - bias.e2 + 0.5j * params.gamma_total - sigma
    out = params.gamma_l * params.gamma_r / np.abs(denom) ** 2
    if np.ndim(omega) == 0:
        return float(out)
    return out


def _dressed_pole_positions(
    e2: float, dots: Sequence[SideDot], params: DeviceParams
) -> list[float]:
    """Real parts of the poles of the dressed center-dot propagator.

    Eigenvalues of the non-hermitian effective Hamiltonian; used only as
    quadrature breakpoints (narrow satellite resonances sit here).
    """
    if not dots:
        return [e2]
    n = len(dots)
    h = np.zeros((n + 1, n + 1), dtype=complex)
    h[0, 0] = e2 - 0.5j * params.gamma_total
    for j, dot in enumerate(dots, start=1):
        h[j, j] = dot.level - 1j * params.delta_broadening
        h[0, j] = h[j, 0] = dot.coupling
    return [float(x) for x in np.linalg.eigvals(h).real]


def _breakpoints(
    bias: BiasPoint, dots: Sequence[SideDot], params: DeviceParams, lo: float, hi: float
) -> list[float]:
    pts = {bias.e2, bias.mu_s, bias.mu_d, bias.band_bottom_s, bias.band_bottom_d}
    if dots:
        w_eff = math.sqrt(sum(d.coupling**2 for d in dots))
        pts.update(d.level for d in dots)
        pts.update((bias.e2 - w_eff, bias.e2 + w_eff))
    pts.update(_dressed_pole_positions(bias.e2, dots, params))
    inside = sorted(p for p in pts if lo < p < hi)
    # Drop near-duplicates; zero-width panels upset QUADPACK.
    dedup: list[float] = []
    scale = max(abs(lo), abs(hi), 1e-6)
    for p in inside:
        if not dedup or p - dedup[-1] > 1e-12 * scale:
            dedup.append(p)
    return dedup


@dataclass(frozen=True)
class SpinCurrent:
    """Current of one spin channel with the quadrature error estimate."""

    spin: SpinChannel
    value: float                        # A
    estimated_quadrature_error: float   # A


def _config_spin_current(
    v_d: float,
    spin: SpinChannel,
    config: CaseConfig,
    params: DeviceParams,
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> SpinCurrent:
    """Landauer integral for one spin channel of one configuration."""
    if v_d < 0:
        raise ValueError("bias v_d must be non-negative")
    bias = bias_geometry(params, v_d, spin)
    dots = config.for_spin(spin)
    kt = CONSTANTS.boltzmann * params.temperature
    lo = min(bias.band_bottom_s, bias.band_bottom_d) - _WINDOW_KT * kt
    hi = bias.mu_s + _WINDOW_KT * kt

    gl, gr = params.gamma_l, params.gamma_r
    gtot = params.gamma_total
    e2 = bias.e2
    mu_s, mu_d = bias.mu_s, bias.mu_d
    bb_s, bb_d = bias.band_bottom_s, bias.band_bottom_d
    broadening = params.delta_broadening
    levels = [d.level for d in dots]
    coup2 = [d.coupling**2 for d in dots]

    def integrand(w: float) -> float:
        occ = 0.0
        if w > bb_s:
            occ += expit(-(w - mu_s) / kt)
        if w > bb_d:
            occ -= expit(-(w - mu_d) / kt)
        if occ == 0.0:
            return 0.0
        sigma = 0j
        for lev, c2 in zip(levels, coup2):
            sigma += c2 / (w - lev + 1j * broadening)
        denom = w - e2 + 0.5j * gtot - sigma
        return gl * gr / abs(denom) ** 2 * occ

    pts = _breakpoints(bias, dots, params, lo, hi)
    result = quad(
        integrand,
        lo,
        hi,
        points=pts or None,
        limit=_MAX_SUBDIVISIONS,
        epsabs=abs_floor / AMP_PER_EV,
        epsrel=rel_tol,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if len(result) > 3:
        raise QuadratureError(
            f"current quadrature did not converge at v_d={v_d:g} V "
            f"(spin {spin.label}): {result[3]}",
            partial_value=AMP_PER_EV * value,
            error_bound=AMP_PER_EV * abserr,
        )
    return SpinCurrent(
        spin=spin,
        value=AMP_PER_EV * value,
        estimated_quadrature_error=AMP_PER_EV * abserr,
    )


def spin_current(
    v_d: float,
    spin: SpinChannel,
    case: MeasurementCase,
    params: DeviceParams,
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> SpinCurrent:
    """Current carried by one spin channel for a measurement case.

    The channel not dressed by the case carries exactly the reference
    current (identical integrand, identical quadrature).
    """
    return _config_spin_current(
        v_d, spin, case_config(case, params), params, rel_tol, abs_floor
    )


def total_current(
    v_d: float,
    case: MeasurementCase,
    params: DeviceParams,
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> float:
    """Spin-summed current in amperes."""
    config = case_config(case, params)
    up = _config_spin_current(v_d, SpinChannel.UP, config, params, rel_tol, abs_floor)
    dn = _config_spin_current(v_d, SpinChannel.DOWN, config, params, rel_tol, abs_floor)
    return up.value + dn.value


@dataclass(frozen=True)
class IvPoint:
    """One bias point of an I-V curve."""

    v_d: float
    i_up: float
    i_down: float
    i_total: float
    quad_error: float


def iv_curve(
    case: MeasurementCase,
    params: DeviceParams,
    grid: Iterable[float],
    rel_tol: float = REL_TOL,
    abs_floor: float = ABS_FLOOR_A,
) -> list[IvPoint]:
    """Pointwise I-V curve over a strictly increasing, non-negative grid.

    Evaluation is stateless per point (no interpolation), so refining the
    grid never changes values at shared points.
    """
    grid = list(grid)
    if any(v < 0 for v in grid):
        raise ValueError("grid biases must be non-negative")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    config = case_config(case, params)
    points = []
    for v in grid:
        up = _config_spin_current(v, SpinChannel.UP, config, params, rel_tol, abs_floor)
        dn = _config_spin_current(v, SpinChannel.DOWN, config, params, rel_tol, abs_floor)
        points.append(
            IvPoint(
                v_d=v,
                i_up=up.value,
                i_down=dn.value,
                i_total=up.value + dn.value,
                quad_error=up.estimated_quadrature_error + dn.estimated_quadrature_error,
            )
        )
    return points
