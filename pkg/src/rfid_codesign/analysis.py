"""Post-processing: fill sweeps, cubic trend fits, link budget, sim/meas tables."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .em import DEFAULT_FREQUENCY, power_transfer, realized_gain
from .errors import InvalidInputError
from .fluid import mass_from_fill
from .geometry import FixedGeometry, FluidProperties, derive_geometry
from .ic import ICProfile, code_of_susceptance, differential_code

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class SweepPoint:
    fill_fraction: float
    mass: float
    code: int
    delta_code: int
    realized_gain: float
    tau: float
    saturated: bool = False


def sweep(provider, v, fixed=FixedGeometry(), fluid=FluidProperties(), profile=ICProfile(),
          frequency=DEFAULT_FREQUENCY, n_points=11):
    """Sensor code and realized gain at ``n_points`` evenly spaced fill states.

    Differential codes are referenced to the empty channel.
    """
    if n_points < 2:
        raise InvalidInputError(f"a sweep needs at least 2 points, got {n_points}")
    geom = derive_geometry(v, fixed, fluid)
    fills = np.linspace(0.0, 1.0, int(n_points))
    fills[-1] = 1.0
    points = []
    reference = None
    for fill in fills:
        fill = float(fill)
        sample = provider.query(v, fill, frequency)
        reading = code_of_susceptance(profile, sample.susceptance, frequency)
        tau = power_transfer(sample, profile, reading, frequency)
        if reference is None:
            reference = reading.code
        points.append(SweepPoint(
            fill_fraction=fill,
            mass=mass_from_fill(fill, geom, fluid),
            code=reading.code,
            delta_code=differential_code(reading.code, reference),
            realized_gain=realized_gain(sample, tau),
            tau=tau,
            saturated=reading.saturated,
        ))
    return points


@dataclass(frozen=True)
class CubicFit:
    coefficients: tuple  # c0..c3, ascending powers
    r_squared: float

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)


def r_squared(y, y_hat):
    y = np.asarray(y, dtype=float)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot <= 0:
        raise InvalidInputError("R^2 undefined: the data have no variance")
    ss_res = float(np.sum((y - np.asarray(y_hat, dtype=float)) ** 2))
    return 1.0 - ss_res / ss_tot


def fit_cubic(x, y):
    """Least-squares cubic through ``(x, y)`` and its coefficient of determination."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidInputError("x and y must be 1-D arrays of equal length")
    if len(x) < 5:
        raise InvalidInputError(f"a cubic trend needs at least 5 points, got {len(x)}")
    design = np.vander(x, 4, increasing=True)
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 4:
        raise np.linalg.LinAlgError(
            f"design matrix is rank {rank}; need at least 4 distinct x values")
    return CubicFit(tuple(float(c) for c in coef), r_squared(y, design @ coef))


def dbm_to_watts(dbm):
    return 10.0 ** (dbm / 10.0) * 1e-3


def reading_range(realized_gain_dbi, eirp_w, frequency, chip_sensitivity_dbm,
                  polarization_loss=0.5):
    """Forward-link limited read distance in metres (free-space Friis)."""
    if not (eirp_w > 0 and frequency > 0 and polarization_loss > 0):
        raise InvalidInputError("EIRP, frequency and polarization factor must be > 0")
    if not (math.isfinite(chip_sensitivity_dbm) and math.isfinite(realized_gain_dbi)):
        raise InvalidInputError("gain and chip sensitivity must be finite")
    wavelength = SPEED_OF_LIGHT / frequency
    gain = 10.0 ** (realized_gain_dbi / 10.0)
    p_sens = dbm_to_watts(chip_sensitivity_dbm)
    return wavelength / (4.0 * math.pi) * math.sqrt(eirp_w * gain * polarization_loss / p_sens)


# -- simulated vs measured ---------------------------------------------------

COMPARISON_METRICS = ("s_u", "s_u_minus_s_l", "S_per_mg", "gt_empty_dbi", "gt_full_dbi",
                      "delta_gt_db")


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    measured: float | None
    spread: float | None
    simulated: float | None

    @property
    def difference(self):
        if self.measured is None or self.simulated is None:
            return None
        return abs(self.measured - self.simulated)


def simulated_metrics(breakdown):
    """The comparison metrics of a fitness breakdown."""
    return {
        "s_u": breakdown.code_empty,
        "s_u_minus_s_l": breakdown.code_swing,
        "S_per_mg": breakdown.sensitivity,
        "gt_empty_dbi": breakdown.realized_empty,
        "gt_full_dbi": breakdown.realized_full,
        "delta_gt_db": breakdown.gain_change,
    }


def compare(simulated, measured, metrics=COMPARISON_METRICS):
    """Pair simulated values with measured ``value`` or ``(value, spread)`` entries.

    A metric missing from either side keeps ``None`` rather than a zero.
    """
    rows = []
    for name in metrics:
        sim = simulated.get(name)
        meas = measured.get(name)
        spread = None
        if isinstance(meas, (tuple, list)):
            meas, spread = meas
        rows.append(ComparisonRow(
            metric=name,
            measured=None if meas is None else float(meas),
            spread=None if spread is None else float(spread),
            simulated=None if sim is None else float(sim),
        ))
    return rows
