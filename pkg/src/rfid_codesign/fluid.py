"""Quasi-static sharp-front fill model of the sensitive channel."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError, OutOfRangeError
from .geometry import FluidProperties


@dataclass(frozen=True)
class FillState:
    mass: float
    fill_fraction: float
    front_position: float
    overflow: bool


def _capacity(geom):
    if not geom.capacity_mass > 0:
        raise InvalidInputError(f"channel capacity must be > 0, got {geom.capacity_mass}")
    return geom.capacity_mass


def fill_from_mass(mass, geom, fluid=FluidProperties()):
    """Fill state for ``mass`` mg of liquid behind a sharp front.

    Fill is measured against the channel capacity; any excess is flagged as
    overflow and the channel is reported full.
    """
    if not math.isfinite(mass) or mass < 0:
        raise InvalidInputError(f"liquid mass must be finite and >= 0, got {mass!r}")
    capacity = _capacity(geom)
    fraction = min(mass / capacity, 1.0)
    return FillState(
        mass=mass,
        fill_fraction=fraction,
        front_position=fraction * geom.path_length,
        overflow=mass > capacity,
    )


def mass_from_fill(fill_fraction, geom, fluid=FluidProperties()):
    if not (0.0 <= fill_fraction <= 1.0):
        raise OutOfRangeError(f"fill fraction must be in [0, 1], got {fill_fraction!r}")
    return fill_fraction * _capacity(geom)
