"""Gated, weighted fitness of one candidate geometry.

Scoring runs in two stages so that a grid search can fix its normalization
between them: :func:`endpoint_metrics` queries the EM provider at the empty
and full states and derives codes, realized gains and sensitivity; then
:func:`score` turns those raw metrics into the three fitness terms and the
combined value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .em import DEFAULT_FREQUENCY, power_transfer, realized_gain
from .errors import CodesignError, InvalidInputError
from .geometry import FixedGeometry, FluidProperties, ParameterVector, liquid_capacity
from .ic import ICProfile, code_of_susceptance

DEFAULT_MONOTONIC_SAMPLES = 5


@dataclass(frozen=True)
class Weights:
    dynamic_range: float = 1.0
    gain: float = 1.0
    sensitivity: float = 1.0

    def __post_init__(self):
        ws = self.as_tuple()
        if any(not math.isfinite(w) or w < 0 for w in ws):
            raise InvalidInputError(f"weights must be finite and >= 0, got {ws}")
        if sum(ws) <= 0:
            raise InvalidInputError("at least one weight must be positive")

    def as_tuple(self):
        return (self.dynamic_range, self.gain, self.sensitivity)


@dataclass(frozen=True)
class Gates:
    """Minimum acceptable realized gain (dBi) and sensitivity (codes/mg).

    The defaults accept every geometry: a realized gain of -inf dBi is zero
    linear gain.
    """

    min_gain_dbi: float = -math.inf
    min_sensitivity: float = 0.0

    def __post_init__(self):
        if math.isnan(self.min_gain_dbi) or math.isnan(self.min_sensitivity):
            raise InvalidInputError("gates must not be NaN")


@dataclass(frozen=True)
class Normalization:
    """Scales that bring the gain and sensitivity terms into [0, 1].

    ``gain`` is a linear (not dB) gain; ``sensitivity`` is in codes/mg.
    """

    gain: float
    sensitivity: float

    def __post_init__(self):
        if not (self.gain > 0 and self.sensitivity > 0):
            raise InvalidInputError(f"normalization values must be > 0, got {self}")

    @classmethod
    def from_metrics(cls, metrics):
        """Largest mean linear gain and sensitivity among usable ``metrics``."""
        usable = [m for m in metrics if m.error is None and m.feasible]
        gain = max((m.mean_linear_gain for m in usable), default=0.0)
        sens = max((m.sensitivity for m in usable), default=0.0)
        # a degenerate grid still needs positive scales; the terms it feeds are
        # then zero anyway
        return cls(gain=gain if gain > 0 else 1.0, sensitivity=sens if sens > 0 else 1.0)

    @classmethod
    def combined(cls, *norms):
        return cls(gain=max(n.gain for n in norms),
                   sensitivity=max(n.sensitivity for n in norms))


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class EndpointMetrics:
    """Raw empty/full state quantities of one geometry, before normalization."""

    v: ParameterVector
    capacity_mass: float = math.nan
    code_empty: int | None = None
    code_full: int | None = None
    raw_code_empty: int | None = None
    raw_code_full: int | None = None
    saturated_empty: bool = False
    saturated_full: bool = False
    tau_empty: float = math.nan
    tau_full: float = math.nan
    realized_empty: float = math.nan
    realized_full: float = math.nan
    sensitivity: float = 0.0
    feasible: bool = False
    error: str | None = None

    @property
    def mean_linear_gain(self):
        if self.error is not None:
            return 0.0
        return 0.5 * (db_to_linear(self.realized_empty) + db_to_linear(self.realized_full))


@dataclass(frozen=True)
class FitnessBreakdown:
    v: ParameterVector
    f1: float
    f2: float
    f3: float
    fitness: float
    metrics: EndpointMetrics = field(repr=False)

    @property
    def feasible(self):
        return self.metrics.feasible

    @property
    def code_empty(self):
        return self.metrics.code_empty

    @property
    def code_full(self):
        return self.metrics.code_full

    @property
    def code_swing(self):
        if self.metrics.code_empty is None:
            return None
        return self.metrics.code_empty - self.metrics.code_full

    @property
    def sensitivity(self):
        return self.metrics.sensitivity

    @property
    def realized_empty(self):
        return self.metrics.realized_empty

    @property
    def realized_full(self):
        return self.metrics.realized_full

    @property
    def gain_change(self):
        return self.metrics.realized_full - self.metrics.realized_empty

    @property
    def error(self):
        return self.metrics.error


# -- individual terms -------------------------------------------------------

def check_monotonic(provider, v, frequency=DEFAULT_FREQUENCY,
                    n_samples=DEFAULT_MONOTONIC_SAMPLES):
    """True when antenna susceptance is strictly monotone over the fill range."""
    if n_samples < 3:
        raise InvalidInputError(f"need at least 3 fill samples, got {n_samples}")
    fills = np.linspace(0.0, 1.0, n_samples)
    ba = np.array([provider.query(v, float(x), frequency).susceptance for x in fills])
    steps = np.diff(ba)
    return bool(np.all(steps > 0) or np.all(steps < 0))


def sensitivity(code_empty, code_full, capacity_mass):
    """Code swing per milligram of liquid at full capacity."""
    if not capacity_mass > 0:
        raise InvalidInputError(f"channel capacity must be > 0, got {capacity_mass}")
    return abs(code_full - code_empty) / capacity_mass


def dynamic_range_term(code_empty, s_max):
    """Share of the code range available to the fill; 0 when the empty code is off scale."""
    if code_empty > s_max or code_empty < 0:
        return 0.0
    return code_empty / s_max


def gain_term(realized_empty, realized_full, norm_gain, min_gain_dbi=-math.inf):
    """Mean linear realized gain over the two states, normalized and capped at 1."""
    if not norm_gain > 0:
        raise InvalidInputError(f"gain normalization must be > 0, got {norm_gain}")
    if min(realized_empty, realized_full) < min_gain_dbi:
        return 0.0
    mean = 0.5 * (db_to_linear(realized_empty) + db_to_linear(realized_full))
    return min(mean / norm_gain, 1.0)


def sensitivity_term(sens, norm_sensitivity, min_sensitivity=0.0):
    if not norm_sensitivity > 0:
        raise InvalidInputError(f"sensitivity normalization must be > 0, got {norm_sensitivity}")
    if sens < min_sensitivity:
        return 0.0
    return min(sens / norm_sensitivity, 1.0)


def combine(f1, f2, f3, weights):
    """Weighted mean of the three terms, forced to zero if any term is zero."""
    terms = (f1, f2, f3)
    if any(t == 0 for t in terms):
        return 0.0
    ws = weights.as_tuple()
    return sum(w * t for w, t in zip(ws, terms)) / sum(ws)


# -- composition ------------------------------------------------------------

def endpoint_metrics(provider, v, fixed=FixedGeometry(), fluid=FluidProperties(),
                     profile=ICProfile(), frequency=DEFAULT_FREQUENCY,
                     n_samples=DEFAULT_MONOTONIC_SAMPLES):
    capacity = liquid_capacity(v, fixed, fluid)
    empty = provider.query(v, 0.0, frequency)
    full = provider.query(v, 1.0, frequency)
    r_empty = code_of_susceptance(profile, empty.susceptance, frequency)
    r_full = code_of_susceptance(profile, full.susceptance, frequency)
    tau_empty = power_transfer(empty, profile, r_empty, frequency)
    tau_full = power_transfer(full, profile, r_full, frequency)
    return EndpointMetrics(
        v=v,
        capacity_mass=capacity,
        code_empty=r_empty.code,
        code_full=r_full.code,
        raw_code_empty=r_empty.raw,
        raw_code_full=r_full.raw,
        saturated_empty=r_empty.saturated,
        saturated_full=r_full.saturated,
        tau_empty=tau_empty,
        tau_full=tau_full,
        realized_empty=realized_gain(empty, tau_empty),
        realized_full=realized_gain(full, tau_full),
        sensitivity=sensitivity(r_empty.code, r_full.code, capacity),
        feasible=check_monotonic(provider, v, frequency, n_samples),
    )


def safe_endpoint_metrics(provider, v, **kwargs):
    """Like :func:`endpoint_metrics` but records failures instead of raising."""
    try:
        return endpoint_metrics(provider, v, **kwargs)
    except CodesignError as exc:
        return EndpointMetrics(v=v, error=f"{type(exc).__name__}: {exc}")


def score(metrics, weights, gates, norm, profile=ICProfile()):
    if metrics.error is not None:
        return FitnessBreakdown(metrics.v, 0.0, 0.0, 0.0, 0.0, metrics)
    # an empty-state code clamped at the top rail is really off scale
    code_empty = metrics.raw_code_empty if metrics.raw_code_empty > profile.s_max \
        else metrics.code_empty
    f1 = dynamic_range_term(code_empty, profile.s_max)
    f2 = gain_term(metrics.realized_empty, metrics.realized_full, norm.gain, gates.min_gain_dbi)
    f3 = sensitivity_term(metrics.sensitivity, norm.sensitivity, gates.min_sensitivity)
    total = combine(f1, f2, f3, weights) if metrics.feasible else 0.0
    return FitnessBreakdown(metrics.v, f1, f2, f3, total, metrics)


def evaluate(provider, v, fixed=FixedGeometry(), fluid=FluidProperties(), profile=ICProfile(),
             weights=Weights(), gates=Gates(), norm=None, frequency=DEFAULT_FREQUENCY,
             n_samples=DEFAULT_MONOTONIC_SAMPLES):
    """Full fitness breakdown of geometry ``v``.

    Without ``norm`` the geometry normalizes against itself, as a one-point
    grid would.
    """
    metrics = endpoint_metrics(provider, v, fixed=fixed, fluid=fluid, profile=profile,
                               frequency=frequency, n_samples=n_samples)
    if norm is None:
        norm = Normalization.from_metrics([metrics])
    return score(metrics, weights, gates, norm, profile)
