"""Parametric layout of the Gamma-match antenna and the serpentine channel.

All lengths are millimetres and masses milligrams. The free unknowns are
``a1`` and ``a2`` (the Gamma-match loop sides) and ``c2`` (channel width);
everything else in the channel follows from them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

AXES = ("a1", "a2", "c2")


@dataclass(frozen=True, order=True)
class ParameterVector:
    a1: float
    a2: float
    c2: float

    def as_tuple(self):
        return (self.a1, self.a2, self.c2)

    def replace(self, **changes):
        values = dict(zip(AXES, self.as_tuple()))
        values.update(changes)
        return ParameterVector(**values)


@dataclass(frozen=True)
class FixedGeometry:
    """Dimensions held constant during the search."""

    a3: float = 1.0  # copper trace width
    c1: float = 1.0  # channel thickness
    ic_gap: float = 1.0

    def __post_init__(self):
        for name in ("a3", "c1", "ic_gap"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class FluidProperties:
    density: float = 1.0  # mg/mm^3, water

    def __post_init__(self):
        if not (math.isfinite(self.density) and self.density > 0):
            raise InvalidInputError(f"density must be > 0, got {self.density!r}")


@dataclass(frozen=True)
class ParameterSpace:
    """Inclusive search box for ``(a1, a2, c2)``."""

    a1: tuple = (0.0, 8.0)
    a2: tuple = (5.0, 15.0)
    c2: tuple = (1.0, 2.5)

    def __post_init__(self):
        for name in AXES:
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise InvalidInputError(f"bounds of {name} must be finite")
            if lo > hi:
                raise InvalidInputError(f"bounds of {name} have min > max: ({lo}, {hi})")
            object.__setattr__(self, name, (float(lo), float(hi)))

    def bounds(self, axis):
        return getattr(self, axis)


@dataclass(frozen=True)
class DerivedGeometry:
    c3: float
    c4: float
    path_length: float
    cross_section: float
    capacity_mass: float
    is_straight: bool


def _check_finite(v):
    for name, value in zip(AXES, v.as_tuple()):
        if not math.isfinite(value):
            raise InvalidInputError(f"{name} must be finite, got {value!r}")


def crossing_length(v, fixed=FixedGeometry()):
    """Side of the channel parallel to the IC (``c3``)."""
    return v.a1 + 2.0 * fixed.a3 + 1.0


def serpentine_step(v, fixed=FixedGeometry()):
    """Serpentine step ``c4``; clamps to zero when the channel turns straight."""
    return max(0.0, (v.a2 - fixed.a3 - 0.5 - 4.0 * v.c2) / 3.0)


def liquid_capacity(v, fixed=FixedGeometry(), fluid=FluidProperties()):
    """Liquid mass (mg) held by the sensitive channel when full.

    The channel is bounded both by the region inside the Gamma-match loop and
    by the serpentine volume itself; the smaller of the two wins.
    """
    _check_finite(v)
    c3 = crossing_length(v, fixed)
    c4 = serpentine_step(v, fixed)
    region = fluid.density * fixed.c1 * c3 * (v.a2 - fixed.a3 - 0.5)
    serpentine = fluid.density * fixed.c1 * v.c2 * (4.0 * c3 + 3.0 * c4)
    return min(region, serpentine)


def derive_geometry(v, fixed=FixedGeometry(), fluid=FluidProperties()):
    _check_finite(v)
    c3 = crossing_length(v, fixed)
    c4 = serpentine_step(v, fixed)
    return DerivedGeometry(
        c3=c3,
        c4=c4,
        path_length=4.0 * c3 + 3.0 * c4,
        cross_section=fixed.c1 * v.c2,
        capacity_mass=liquid_capacity(v, fixed, fluid),
        is_straight=(c4 == 0.0),
    )


def in_bounds(v, space=ParameterSpace()):
    for axis, value in zip(AXES, v.as_tuple()):
        lo, hi = space.bounds(axis)
        if not (lo <= value <= hi):
            return False
    return True


def axis_samples(lo, hi, count):
    """Evenly spaced inclusive samples; a single sample sits at the midpoint."""
    if count < 1:
        raise InvalidInputError(f"grid count must be >= 1, got {count}")
    if count == 1:
        return [0.5 * (lo + hi)]
    values = np.linspace(lo, hi, int(count))
    # pin the ends exactly so on-bound nodes survive the in_bounds check
    values[0], values[-1] = lo, hi
    return [float(x) for x in values]


def make_grid(space, counts):
    """Cartesian grid over ``(a1, a2, c2)`` with ``counts`` samples per axis."""
    counts = tuple(int(c) for c in counts)
    if len(counts) != 3:
        raise InvalidInputError(f"need three axis counts, got {counts}")
    per_axis = [axis_samples(*space.bounds(axis), n) for axis, n in zip(AXES, counts)]
    points = []
    for a1, a2, c2 in itertools.product(*per_axis):
        points.append(ParameterVector(a1, a2, c2))
    return points


def grid_spacing(space, counts):
    """Distance between neighbouring nodes on each axis (0 for single-sample axes)."""
    spacing = []
    for axis, n in zip(AXES, counts):
        lo, hi = space.bounds(axis)
        spacing.append((hi - lo) / (n - 1) if n > 1 else 0.0)
    return tuple(spacing)
