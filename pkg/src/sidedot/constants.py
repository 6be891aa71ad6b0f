"""Physical constants (CODATA 2018) in the unit system used throughout.

Unit conventions for the whole package:

* energies in eV,
* bias voltages in volts, with the identification ``e * V == numerically
  equal eV`` (so a level shifted by half the bias moves by ``v_d / 2`` eV),
* currents in amperes, times in seconds, temperatures in kelvin,
  magnetic fields in tesla.

Keeping a single explicit unit table here avoids hidden conversion factors
inside the transport integrals and the measurement-time formulas.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values; the SI-exact ones are exact by definition."""

    electron_charge: float = 1.602176634e-19    # C (exact)
    planck_h: float = 6.62607015e-34             # J s (exact)
    hbar: float = 6.582119569e-16                # eV s, = planck_h / (2 pi e)
    boltzmann: float = 8.617333262e-5            # eV / K, = 1.380649e-23 / e
    bohr_magneton: float = 5.7883818060e-5       # eV / T


CONSTANTS = PhysicalConstants()

# Electron spin g-factor used for the Zeeman splitting (free-electron value,
# rounded; silicon conduction-band electrons sit within 0.1% of 2).
G_FACTOR = 2.0

# Landauer prefactor for an integral carried out in eV: e/h in SI needs the
# energy differential in joules, so I[A] = (e^2/h) * integral[eV].
AMP_PER_EV = CONSTANTS.electron_charge ** 2 / CONSTANTS.planck_h
