"""Device model: parameters, spin channels, bias geometry and readout cases.

The simulated device is a chain of three quantum dots.  The center dot
(index 2) carries the source-drain current; the outer dots (1 and 3) hold
one spin qubit each and couple to the center dot only by tunneling, never
to the leads.  A qubit whose resident electron points up accepts a second
(down-spin) electron into its singlet level at ``e1``; a down qubit accepts
an up-spin electron at ``e1 + delta`` where ``delta`` is the Zeeman
splitting.  The measurement current therefore sees, per spin channel,
either no side level at all (the reference), one side level, or two side
levels at the same energy, depending on the joint qubit state.

Spin bookkeeping uses the effective-Fermi convention: dot levels and band
bottoms are common to both spins and the Zeeman shift enters only through
spin-dependent electrochemical potentials ``E_F +- delta/2``.  This
reproduces the onset biases ``2*(e2_0 - ef -+ delta/2)``, their ``2*delta``
splitting, and the spin-independent end of the resonant peak at
``2*e2_0``, with the bias lever arm of exactly 1/2 on the center level.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .constants import CONSTANTS, G_FACTOR

__all__ = [
    "SpinChannel",
    "DeviceParams",
    "BiasPoint",
    "MeasurementCase",
    "SideDot",
    "CaseConfig",
    "zeeman_from_field",
    "field_from_zeeman",
    "bias_geometry",
    "case_config",
    "onset_bias",
    "end_of_peak_bias",
    "DEFAULT_CASE_TABLE",
]


class SpinChannel(enum.Enum):
    """One of the two independent transport channels (no spin flips)."""

    UP = "up"
    DOWN = "down"

    @property
    def sigma(self) -> int:
        """Signed unit: +1 for up, -1 for down."""
        return +1 if self is SpinChannel.UP else -1

    @property
    def label(self) -> str:
        return self.value

    def flipped(self) -> "SpinChannel":
        return SpinChannel.DOWN if self is SpinChannel.UP else SpinChannel.UP


class MeasurementCase(enum.Enum):
    """Joint qubit state being read out, plus the uncoupled reference."""

    REFERENCE = "reference"
    CASE_I = "case_i"      # left down, right up
    CASE_II = "case_ii"    # left up, right down
    CASE_III = "case_iii"  # both down
    CASE_IV = "case_iv"    # both up

    @property
    def label(self) -> str:
        return self.value

    @property
    def qubit_states(self) -> tuple[SpinChannel, SpinChannel] | None:
        """(left, right) qubit spin, or None for the reference."""
        return _QUBIT_STATES[self]


_QUBIT_STATES = {
    MeasurementCase.REFERENCE: None,
    MeasurementCase.CASE_I: (SpinChannel.DOWN, SpinChannel.UP),
    MeasurementCase.CASE_II: (SpinChannel.UP, SpinChannel.DOWN),
    MeasurementCase.CASE_III: (SpinChannel.DOWN, SpinChannel.DOWN),
    MeasurementCase.CASE_IV: (SpinChannel.UP, SpinChannel.UP),
}

MEASUREMENT_CASES = (
    MeasurementCase.CASE_I,
    MeasurementCase.CASE_II,
    MeasurementCase.CASE_III,
    MeasurementCase.CASE_IV,
)
ALL_CASES = (MeasurementCase.REFERENCE,) + MEASUREMENT_CASES


@dataclass(frozen=True)
class DeviceParams:
    """All energies of one simulated device, in eV (temperature in K).

    ``e1`` is the shared base singlet level of both qubit dots, ``e2_0``
    the center-dot level at zero bias, ``w12``/``w23`` the tunnel couplings
    to the left/right qubit dot, ``delta`` the Zeeman splitting,
    ``delta_broadening`` the numerical infinitesimal used for the side-dot
    propagators, ``ef`` the equilibrium Fermi energy and ``gamma_l``/
    ``gamma_r`` the wide-band lead couplings.
    """

    e1: float
    e2_0: float
    w12: float
    w23: float
    delta: float
    ef: float
    gamma_l: float
    gamma_r: float
    temperature: float
    delta_broadening: float = 1e-9

    def __post_init__(self):
        if self.gamma_l <= 0 or self.gamma_r <= 0:
            raise ValueError("lead couplings gamma_l, gamma_r must be positive")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.delta < 0:
            raise ValueError("delta (Zeeman splitting) must be non-negative")
        if self.delta_broadening <= 0:
            raise ValueError("delta_broadening must be positive")
        if self.w12 < 0 or self.w23 < 0:
            raise ValueError("tunnel couplings w12, w23 must be non-negative")
        # Operating regime: the center level starts above the Fermi sea and
        # below the qubit levels, so it can cross them as the bias grows.
        if not self.e2_0 > self.ef:
            raise ValueError("operating regime requires e2_0 > ef")
        if not self.e1 > self.e2_0:
            raise ValueError("operating regime requires e1 > e2_0")

    @property
    def gamma_total(self) -> float:
        return self.gamma_l + self.gamma_r

    def with_(self, **changes) -> "DeviceParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


@dataclass(frozen=True)
class BiasPoint:
    """Per-spin electrochemical geometry at one applied bias (all eV)."""

    spin: SpinChannel
    e2: float             # center-dot level at this bias
    mu_s: float           # source electrochemical potential
    mu_d: float           # drain electrochemical potential
    band_bottom_s: float  # bottom of the source band
    band_bottom_d: float  # bottom of the drain band


@dataclass(frozen=True)
class SideDot:
    """One side-coupled acceptance level seen by a spin channel."""

    level: float     # eV
    coupling: float  # eV


@dataclass(frozen=True)
class CaseConfig:
    """Side-dot configuration per spin channel for one measurement case."""

    up: tuple[SideDot, ...] = field(default_factory=tuple)
    down: tuple[SideDot, ...] = field(default_factory=tuple)

    def for_spin(self, spin: SpinChannel) -> tuple[SideDot, ...]:
        return self.up if spin is SpinChannel.UP else self.down

    @property
    def active_spin(self) -> SpinChannel | None:
        """The channel that carries side dots, or None (reference)."""
        if self.up:
            return SpinChannel.UP
        if self.down:
            return SpinChannel.DOWN
        return None


def zeeman_from_field(b_field: float) -> float:
    """Zeeman splitting g * mu_B * B in eV for a field in tesla."""
    if b_field < 0:
        raise ValueError("magnetic field must be non-negative")
    return G_FACTOR * CONSTANTS.bohr_magneton * b_field


def field_from_zeeman(delta: float) -> float:
    """Inverse of :func:`zeeman_from_field`."""
    if delta < 0:
        raise ValueError("Zeeman splitting must be non-negative")
    return delta / (G_FACTOR * CONSTANTS.bohr_magneton)


def bias_geometry(params: DeviceParams, v_d: float, spin: SpinChannel) -> BiasPoint:
    """Electrochemical geometry of one spin channel at bias ``v_d``.

    The center level rises with lever arm 1/2, the source potential and the
    source band bottom ride the full bias, and the spin enters only through
    the effective Fermi level ``ef + sigma * delta / 2``.
    """
    if v_d < 0:
        raise ValueError("bias v_d must be non-negative")
    mu_eff = params.ef + spin.sigma * params.delta / 2.0
    return BiasPoint(
        spin=spin,
        e2=params.e2_0 + v_d / 2.0,
        mu_s=mu_eff + v_d,
        mu_d=mu_eff,
        band_bottom_s=v_d,
        band_bottom_d=0.0,
    )


def onset_bias(params: DeviceParams, spin: SpinChannel) -> float:
    """Bias where the center level meets the source potential (current onset).

    Solves ``e2(v) = mu_s(v)``; onsets of the two spins differ by exactly
    ``2 * delta``.
    """
    return 2.0 * (params.e2_0 - params.ef - spin.sigma * params.delta / 2.0)


def end_of_peak_bias(params: DeviceParams) -> float:
    """Bias where the center level sinks below the source band bottom.

    Solves ``e2(v) = band_bottom_s(v)``; identical for both spins.
    """
    return 2.0 * params.e2_0


# Default case table: which channel is dressed, at which level, by how many
# side dots.  The opposite channel of every case carries the bare reference
# current.  Entries: case -> (active channel, level offset in units of
# delta, number of side dots).
DEFAULT_CASE_TABLE: dict[MeasurementCase, tuple[SpinChannel, int, int] | None] = {
    MeasurementCase.REFERENCE: None,
    MeasurementCase.CASE_I: (SpinChannel.UP, 1, 1),
    MeasurementCase.CASE_II: (SpinChannel.DOWN, 0, 1),
    MeasurementCase.CASE_III: (SpinChannel.UP, 1, 2),
    MeasurementCase.CASE_IV: (SpinChannel.DOWN, 0, 2),
}


def case_config(
    case: MeasurementCase,
    params: DeviceParams,
    table: dict[MeasurementCase, tuple[SpinChannel, int, int] | None] | None = None,
) -> CaseConfig:
    """Side-dot configuration for a measurement case.

    The assignment is data: pass a modified ``table`` (same shape as
    :data:`DEFAULT_CASE_TABLE`) or construct a :class:`CaseConfig` directly
    to explore alternative level assignments.
    """
    entry = (table or DEFAULT_CASE_TABLE)[case]
    if entry is None:
        return CaseConfig()
    spin, level_steps, n_dots = entry
    level = params.e1 + level_steps * params.delta
    couplings = (params.w12, params.w23)[:n_dots]
    # A vanishing coupling is an absent dot (edge-qubit configuration);
    # dropping it keeps zero-coupling cases exactly equal to the reference.
    dots = tuple(SideDot(level=level, coupling=c) for c in couplings if c > 0.0)
    if spin is SpinChannel.UP:
        return CaseConfig(up=dots)
    return CaseConfig(down=dots)
