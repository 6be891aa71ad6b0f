#!/usr/bin/env python3
"""Spin-resolved I-V curves and the side-dot antiresonance.

Walks through the basic transport picture: the bare center dot gives a
single resonant mesa between the spin-split onsets and the common peak
end; coupling a side dot reshapes the active spin channel, suppressing it
where the levels hybridize.
"""

import numpy as np

from sidedot import (
    DeviceParams,
    MeasurementCase,
    SpinChannel,
    end_of_peak_bias,
    onset_bias,
    spin_current,
)

device = DeviceParams(
    e1=1.2e-3, e2_0=1.1e-3,      # qubit level 0.2 meV above the center level
    w12=2e-4, w23=2e-4,          # strong tunnel coupling, 0.2 meV
    delta=1.6e-4,                # Zeeman splitting 0.16 meV
    ef=1.0e-3, gamma_l=2e-6, gamma_r=2e-6, temperature=0.1,
)

print("Bias landmarks (analytic):")
print(f"  up-spin onset   {onset_bias(device, SpinChannel.UP)*1e3:7.3f} mV")
print(f"  down-spin onset {onset_bias(device, SpinChannel.DOWN)*1e3:7.3f} mV")
print(f"  peak end        {end_of_peak_bias(device)*1e3:7.3f} mV (both spins)")

print("\nReference vs case-i currents (up channel dressed by one level):")
print(f"{'V_D (mV)':>9} {'ref up (nA)':>12} {'ref dn (nA)':>12} "
      f"{'case-i up (nA)':>15}")
for v in np.linspace(0.0, 3e-3, 16):
    ref_up = spin_current(v, SpinChannel.UP, MeasurementCase.REFERENCE, device)
    ref_dn = spin_current(v, SpinChannel.DOWN, MeasurementCase.REFERENCE, device)
    ci_up = spin_current(v, SpinChannel.UP, MeasurementCase.CASE_I, device)
    print(f"{v*1e3:9.2f} {ref_up.value*1e9:12.4f} {ref_dn.value*1e9:12.4f} "
          f"{ci_up.value*1e9:15.4f}")

print("""
Reading the table: the up channel turns on first (smaller onset), both
channels die together past the peak end, and the dressed case-i channel
stays blocked well past the bare onset -- that blockade window is where
the readout contrast lives.""")
