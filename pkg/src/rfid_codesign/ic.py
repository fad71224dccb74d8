"""Self-tuning RFID chip model.

The chip is a fixed conductance in parallel with a capacitor bank stepped in
equal increments. At each read it picks the bank setting that cancels the
antenna susceptance and reports that setting as an integer sensor code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError, OutOfRangeError

PF = 1e-12

# sensor-code arguments are snapped to this many decimals before rounding so
# that exact half-steps are not lost to floating-point noise
_TIE_DECIMALS = 9


@dataclass(frozen=True)
class ICProfile:
    """Chip constants. Capacitances in pF, conductance in siemens.

    Defaults describe the Magnus S3: 0.0482 mS, 1.9 pF to 2.9 pF over codes
    0..511.
    """

    conductance: float = 0.0482e-3
    c_min: float = 1.9
    c_max: float = 2.9
    s_min: int = 0
    s_max: int = 511

    def __post_init__(self):
        if not (0 < self.c_min < self.c_max):
            raise InvalidInputError(
                f"need 0 < c_min < c_max, got c_min={self.c_min}, c_max={self.c_max}")
        if not (0 <= self.s_min < self.s_max):
            raise InvalidInputError(
                f"need 0 <= s_min < s_max, got s_min={self.s_min}, s_max={self.s_max}")
        if not (math.isfinite(self.conductance) and self.conductance > 0):
            raise InvalidInputError(f"conductance must be > 0, got {self.conductance}")

    @property
    def c_step(self):
        """Capacitance increment per code, pF."""
        return (self.c_max - self.c_min) / (self.s_max - self.s_min)

    @property
    def c_baseline(self):
        return self.c_min


@dataclass(frozen=True)
class SensorReading:
    """A reported code. ``raw`` is the unclamped code before saturation."""

    code: int
    saturated: bool
    raw: int


def angular(frequency):
    if not (math.isfinite(frequency) and frequency > 0):
        raise InvalidInputError(f"frequency must be > 0, got {frequency!r}")
    return 2.0 * math.pi * frequency


def nint(x):
    """Nearest integer, halves rounded away from zero."""
    x = round(x, _TIE_DECIMALS)
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def capacitance_of_code(profile, s):
    """Bank capacitance (pF) selected by code ``s``."""
    if not (profile.s_min <= s <= profile.s_max):
        raise OutOfRangeError(f"code {s} outside [{profile.s_min}, {profile.s_max}]")
    return profile.c_min + (s - profile.s_min) * profile.c_step


def code_of_susceptance(profile, susceptance, frequency):
    """Code the chip settles on for antenna susceptance ``susceptance`` (S)."""
    if not math.isfinite(susceptance):
        raise InvalidInputError(f"susceptance must be finite, got {susceptance!r}")
    omega = angular(frequency)
    steps = -(profile.c_min + susceptance / omega / PF) / profile.c_step
    raw = profile.s_min + nint(steps)
    code = min(max(raw, profile.s_min), profile.s_max)
    return SensorReading(code=code, saturated=(code != raw), raw=raw)


def susceptance_of_code(profile, s, frequency):
    """Antenna susceptance that the chip cancels exactly at code ``s``."""
    return -angular(frequency) * capacitance_of_code(profile, s) * PF


def tuning_residual(profile, reading, susceptance, frequency):
    """Leftover susceptance |w C_IC(s) + B_A| after tuning, in siemens."""
    omega = angular(frequency)
    return abs(omega * capacitance_of_code(profile, reading.code) * PF + susceptance)


def differential_code(s, s0):
    return s - s0
