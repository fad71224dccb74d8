"""Electromagnetic response providers and the chip/antenna power chain.

A provider answers ``query(v, fill_fraction, frequency)`` with the antenna
admittance and radiation gain for one geometry at one fill state. Two
implementations are included: a tabulated provider loaded from CSV (for
grids simulated elsewhere) and an analytic surrogate anchored at the empty
and full states.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CoverageError, DatasetError, InvalidInputError, OutOfRangeError
from .geometry import ParameterVector
from .ic import PF, angular, capacitance_of_code, susceptance_of_code

DEFAULT_FREQUENCY = 925e6

DATASET_COLUMNS = ("a1_mm", "a2_mm", "c2_mm", "fill", "freq_hz", "ga_s", "ba_s", "grad_dbi")

_KEY_DECIMALS = 9


@dataclass(frozen=True)
class EMSample:
    conductance: float  # G_A, S
    susceptance: float  # B_A, S
    gain_dbi: float  # radiation gain

    def __post_init__(self):
        values = (self.conductance, self.susceptance, self.gain_dbi)
        if not all(math.isfinite(x) for x in values):
            raise InvalidInputError(f"EM sample must be finite, got {values}")
        if self.conductance <= 0:
            raise InvalidInputError(f"antenna conductance must be > 0, got {self.conductance}")


@dataclass(frozen=True)
class EMQuery:
    v: ParameterVector
    fill_fraction: float
    frequency: float = DEFAULT_FREQUENCY

    def __post_init__(self):
        _check_query(self.fill_fraction, self.frequency)


@dataclass(frozen=True)
class Materials:
    """Material constants the EM data were produced with. Metadata only."""

    substrate_permittivity: float = 3.5  # Kapton
    substrate_loss_tangent: float = 0.0026
    liquid_permittivity: float = 78.0  # water
    liquid_conductivity: float = 1.78  # S/m

    def __post_init__(self):
        if self.substrate_permittivity < 1 or self.liquid_permittivity < 1:
            raise InvalidInputError("relative permittivity must be >= 1")
        if self.substrate_loss_tangent < 0 or self.liquid_conductivity < 0:
            raise InvalidInputError("loss tangent and conductivity must be >= 0")


def _check_query(fill_fraction, frequency):
    if not (0.0 <= fill_fraction <= 1.0):
        raise OutOfRangeError(f"fill fraction must be in [0, 1], got {fill_fraction!r}")
    if not (math.isfinite(frequency) and frequency > 0):
        raise InvalidInputError(f"frequency must be > 0, got {frequency!r}")


def query(provider, q):
    """Answer an :class:`EMQuery` with ``provider``."""
    return provider.query(q.v, q.fill_fraction, q.frequency)


# -- power chain ------------------------------------------------------------

def power_transfer(sample, profile, reading, frequency):
    """Fraction of available power delivered to the chip at code ``reading``."""
    omega = angular(frequency)
    g_a, g_ic = sample.conductance, profile.conductance
    residual = omega * capacitance_of_code(profile, reading.code) * PF + sample.susceptance
    return 4.0 * g_a * g_ic / ((g_a + g_ic) ** 2 + residual ** 2)


def realized_gain(sample, tau):
    """Radiation gain scaled by power transfer, dBi; ``-inf`` when unreadable."""
    if not (0.0 <= tau <= 1.0 + 1e-12):
        raise OutOfRangeError(f"power transfer must be in [0, 1], got {tau!r}")
    if tau == 0.0:
        return -math.inf
    return sample.gain_dbi + 10.0 * math.log10(min(tau, 1.0))


# -- analytic surrogate -----------------------------------------------------

@dataclass(frozen=True)
class SurrogateCalibration:
    """Empty/full endpoint values for one geometry.

    Between the endpoints every quantity moves as ``fill ** shape``; gain is
    interpolated in dB.
    """

    ba_empty: float
    ba_full: float
    grad_empty: float
    grad_full: float
    ga_empty: float = 0.0482e-3
    ga_full: float = 0.0482e-3
    shape: float = 1.0
    frequency: float | None = None

    def __post_init__(self):
        if self.ba_empty == self.ba_full:
            raise InvalidInputError("susceptance endpoints must differ")
        if not self.shape > 0:
            raise InvalidInputError(f"shape exponent must be > 0, got {self.shape}")
        if self.ga_empty <= 0 or self.ga_full <= 0:
            raise InvalidInputError("conductance endpoints must be > 0")

    @classmethod
    def from_codes(cls, profile, code_empty, code_full, realized_empty, realized_full,
                   frequency=DEFAULT_FREQUENCY, ga_empty=None, ga_full=None, shape=1.0):
        """Calibrate from target sensor codes and realized gains.

        Susceptances are placed exactly on the requested bank settings, so the
        chip tunes with zero residual and the radiation gain only has to absorb
        the conductance mismatch.
        """
        ga_empty = profile.conductance if ga_empty is None else ga_empty
        ga_full = profile.conductance if ga_full is None else ga_full

        def radiation_gain(realized, ga):
            tau = 4.0 * ga * profile.conductance / (ga + profile.conductance) ** 2
            return realized - 10.0 * math.log10(tau)

        return cls(
            ba_empty=susceptance_of_code(profile, code_empty, frequency),
            ba_full=susceptance_of_code(profile, code_full, frequency),
            grad_empty=radiation_gain(realized_empty, ga_empty),
            grad_full=radiation_gain(realized_full, ga_full),
            ga_empty=ga_empty,
            ga_full=ga_full,
            shape=shape,
            frequency=frequency,
        )

    def sample(self, fill_fraction):
        if fill_fraction == 0.0:
            return EMSample(self.ga_empty, self.ba_empty, self.grad_empty)
        if fill_fraction == 1.0:
            return EMSample(self.ga_full, self.ba_full, self.grad_full)
        t = fill_fraction ** self.shape
        return EMSample(
            self.ga_empty + t * (self.ga_full - self.ga_empty),
            self.ba_empty + t * (self.ba_full - self.ba_empty),
            self.grad_empty + t * (self.grad_full - self.grad_empty),
        )


class FunctionProvider:
    """Surrogate whose calibration is computed per geometry by ``calibrate(v)``.

    ``calibrate`` may raise :class:`CoverageError` for geometries it does not
    know about.
    """

    def __init__(self, calibrate):
        self._calibrate = calibrate

    def calibration(self, v):
        return self._calibrate(v)

    def query(self, v, fill_fraction, frequency=DEFAULT_FREQUENCY):
        _check_query(fill_fraction, frequency)
        cal = self._calibrate(v)
        if cal.frequency is not None and not math.isclose(cal.frequency, frequency):
            raise CoverageError(
                f"surrogate for {v} is calibrated at {cal.frequency} Hz, not {frequency} Hz")
        return cal.sample(fill_fraction)


class SurrogateProvider(FunctionProvider):
    """Surrogate backed by per-geometry calibrations, with an optional fallback."""

    def __init__(self, calibrations=None, default=None):
        if isinstance(calibrations, SurrogateCalibration):
            default, calibrations = calibrations, None
        self._table = {_geometry_key(v): cal for v, cal in (calibrations or {}).items()}
        self._default = default
        super().__init__(self._lookup)

    def _lookup(self, v):
        cal = self._table.get(_geometry_key(v), self._default)
        if cal is None:
            raise CoverageError(f"no surrogate calibration for {v}")
        return cal


# -- tabulated provider -----------------------------------------------------

def _geometry_key(v):
    return tuple(round(float(x), _KEY_DECIMALS) for x in v.as_tuple())


@dataclass
class _Series:
    fills: list = field(default_factory=list)
    ga: list = field(default_factory=list)
    ba: list = field(default_factory=list)
    grad: list = field(default_factory=list)


class TabulatedProvider:
    """Provider answering from a table of simulated samples.

    Geometry and frequency must match a table entry exactly; fill fraction is
    interpolated piecewise-linearly between the tabulated fill nodes.
    """

    def __init__(self, series, source=None):
        self._series = series
        self.source = source

    @property
    def geometries(self):
        return sorted({ParameterVector(*key) for key, _ in self._series})

    @property
    def frequencies(self):
        return sorted({freq for _, freq in self._series})

    def query(self, v, fill_fraction, frequency=DEFAULT_FREQUENCY):
        _check_query(fill_fraction, frequency)
        key = (_geometry_key(v), float(frequency))
        series = self._series.get(key)
        if series is None:
            raise CoverageError(f"dataset has no entry for {v} at {frequency} Hz")
        fills = series.fills
        if not (fills[0] <= fill_fraction <= fills[-1]):
            raise OutOfRangeError(
                f"fill {fill_fraction} outside tabulated range [{fills[0]}, {fills[-1]}] for {v}")
        if len(fills) == 1:
            return EMSample(series.ga[0], series.ba[0], series.grad[0])
        return EMSample(
            float(np.interp(fill_fraction, fills, series.ga)),
            float(np.interp(fill_fraction, fills, series.ba)),
            float(np.interp(fill_fraction, fills, series.grad)),
        )


def _parse_float(text, column, lineno, path):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise DatasetError(f"column {column!r}: cannot parse {text!r} as a number",
                           line=lineno, path=path) from None
    if not math.isfinite(value):
        raise DatasetError(f"column {column!r}: non-finite value {text!r}", line=lineno, path=path)
    return value


def load_dataset(path):
    """Load a tabulated EM dataset from CSV.

    Lines starting with ``#`` and blank lines are skipped. Within one
    ``(geometry, frequency)`` group the fill column must strictly increase.
    """
    series = {}
    header = None
    with open(path, newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            cells = [c.strip() for c in next(csv.reader([stripped]))]
            if header is None:
                if tuple(cells) != DATASET_COLUMNS:
                    raise DatasetError(
                        f"expected header {','.join(DATASET_COLUMNS)}, got {stripped!r}",
                        line=lineno, path=path)
                header = cells
                continue
            if len(cells) != len(DATASET_COLUMNS):
                raise DatasetError(f"expected {len(DATASET_COLUMNS)} fields, got {len(cells)}",
                                   line=lineno, path=path)
            row = {col: _parse_float(cell, col, lineno, path)
                   for col, cell in zip(DATASET_COLUMNS, cells)}
            if not (0.0 <= row["fill"] <= 1.0):
                raise DatasetError(f"fill {row['fill']} outside [0, 1]", line=lineno, path=path)
            if row["freq_hz"] <= 0:
                raise DatasetError("frequency must be > 0", line=lineno, path=path)
            if row["ga_s"] <= 0:
                raise DatasetError("antenna conductance must be > 0", line=lineno, path=path)

            v = ParameterVector(row["a1_mm"], row["a2_mm"], row["c2_mm"])
            key = (_geometry_key(v), row["freq_hz"])
            s = series.setdefault(key, _Series())
            if row["fill"] in s.fills:
                raise DatasetError(f"duplicate entry for {v}, fill {row['fill']}, "
                                   f"{row['freq_hz']} Hz", line=lineno, path=path)
            if s.fills and row["fill"] < s.fills[-1]:
                raise DatasetError(f"fill values for {v} at {row['freq_hz']} Hz are not "
                                   f"increasing ({row['fill']} after {s.fills[-1]})",
                                   line=lineno, path=path)
            s.fills.append(row["fill"])
            s.ga.append(row["ga_s"])
            s.ba.append(row["ba_s"])
            s.grad.append(row["grad_dbi"])
    if header is None:
        raise DatasetError("dataset is empty (no header)", path=path)
    if not series:
        raise DatasetError("dataset has a header but no rows", path=path)
    return TabulatedProvider(series, source=str(path))


def write_dataset(path, rows, comment=None):
    """Write ``(v, fill, frequency, EMSample)`` rows in the dataset CSV format."""
    with open(path, "w", newline="") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DATASET_COLUMNS)
        for v, fill, frequency, sample in rows:
            writer.writerow([repr(float(v.a1)), repr(float(v.a2)), repr(float(v.c2)),
                             repr(float(fill)), repr(float(frequency)),
                             repr(sample.conductance), repr(sample.susceptance),
                             repr(sample.gain_dbi)])
    return path
