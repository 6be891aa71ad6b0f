"""Independent cross-checks for the transport formulas.

Everything here deliberately avoids the closed-form transmission used by
the production path: the Green's function comes from dense matrix
inversion, the plateau current from the zero-temperature Lorentzian
integral, and the brute-force current from a fixed-step trapezoid rule.
The self-test command and the test suite compare these against the
production results.
"""

from __future__ import annotations

import numpy as np

from .constants import AMP_PER_EV
from .device import BiasPoint, CaseConfig, DeviceParams, SpinChannel, bias_geometry
from .transport import fermi

__all__ = [
    "matrix_transmission",
    "breit_wigner_plateau_current",
    "trapezoid_spin_current",
]


def matrix_transmission(
    omega: float, bias: BiasPoint, config: CaseConfig, params: DeviceParams
) -> float:
    """Transmission via dense inversion of the 3x3 effective Hamiltonian.

    Builds ``(omega*I - H_eff)`` with the center dot in the middle slot,
    side dots (zero-padded if absent) on the outer slots, and reads off
    ``gamma_l * gamma_r * |G_cc|^2`` from the inverted matrix.
    """
    dots = list(config.for_spin(bias.spin))
    while len(dots) < 2:
        # Uncoupled spectator level far away; does not affect G_cc.
        dots.append(None)
    d = params.delta_broadening
    diag = [
        (dots[0].level if dots[0] else 10.0) - 1j * d,
        bias.e2 - 0.5j * params.gamma_total,
        (dots[1].level if dots[1] else 10.0) - 1j * d,
    ]
    h = np.diag(diag).astype(complex)
    h[0, 1] = h[1, 0] = dots[0].coupling if dots[0] else 0.0
    h[2, 1] = h[1, 2] = dots[1].coupling if dots[1] else 0.0
    g = np.linalg.inv(omega * np.eye(3, dtype=complex) - h)
    return float(params.gamma_l * params.gamma_r * abs(g[1, 1]) ** 2)


def breit_wigner_plateau_current(params: DeviceParams) -> float:
    """Zero-temperature plateau current of the bare resonance, in amperes.

    Full Lorentzian weight inside the bias window:
    ``(e/h) * 2*pi*gamma_l*gamma_r / (gamma_l + gamma_r)`` per spin channel.
    """
    return AMP_PER_EV * 2.0 * np.pi * params.gamma_l * params.gamma_r / params.gamma_total


def trapezoid_spin_current(
    v_d: float,
    spin: SpinChannel,
    config: CaseConfig,
    params: DeviceParams,
    n_points: int = 1_000_000,
) -> float:
    """Brute-force fixed-grid trapezoid evaluation of the Landauer integral.

    Convergence is only algebraic, so this is a test oracle, not a runtime
    path.  Uses the same window convention as the adaptive integrator.
    """
    from .transport import transmission  # local import keeps module graphs flat

    bias = bias_geometry(params, v_d, spin)
    kt = 8.617333262e-5 * params.temperature
    lo = min(bias.band_bottom_s, bias.band_bottom_d) - 10 * kt
    hi = bias.mu_s + 10 * kt
    w = np.linspace(lo, hi, n_points)
    occ = fermi(w, bias.mu_s, params.temperature) * (w > bias.band_bottom_s)
    occ -= fermi(w, bias.mu_d, params.temperature) * (w > bias.band_bottom_d)
    t = transmission(w, bias, config, params)
    return AMP_PER_EV * float(np.trapezoid(t * occ, w))
