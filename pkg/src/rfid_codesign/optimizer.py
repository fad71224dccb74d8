"""Two-step hierarchical grid search over ``(a1, a2, c2)``.

Round 1 scans the full box. Round 2 scans a smaller ``(a1, a2)`` box centred
on the round-1 incumbent with ``c2`` frozen. Each round evaluates every point
once, fixes its normalization from the evaluated metrics, then scores.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .em import DEFAULT_FREQUENCY
from .errors import InvalidInputError
from .fitness import (DEFAULT_MONOTONIC_SAMPLES, Gates, Normalization, Weights,
                      safe_endpoint_metrics, score)
from .geometry import (FixedGeometry, FluidProperties, ParameterSpace, axis_samples,
                       grid_spacing, in_bounds, make_grid)
from .ic import ICProfile

NORM_MODES = ("round", "cumulative", "pinned")


@dataclass(frozen=True)
class NormPolicy:
    """How each round picks its normalization.

    ``round`` uses the maxima found on the round's own grid, ``cumulative``
    the maxima over all rounds so far, ``pinned`` a fixed value.
    """

    mode: str = "round"
    pinned: Normalization | None = None

    def __post_init__(self):
        if self.mode not in NORM_MODES:
            raise InvalidInputError(f"normalization mode must be one of {NORM_MODES}")
        if self.mode == "pinned" and self.pinned is None:
            raise InvalidInputError("pinned normalization mode needs a pinned value")


@dataclass(frozen=True)
class GridSpec:
    space: ParameterSpace = field(default_factory=ParameterSpace)
    round1_counts: tuple = (5, 5, 4)
    round2_counts: tuple = (5, 5)
    shrink: float = 0.5  # round-2 spacing as a fraction of round-1 spacing

    def __post_init__(self):
        if len(self.round1_counts) != 3 or len(self.round2_counts) != 2:
            raise InvalidInputError("round 1 needs three axis counts and round 2 two")
        if any(int(n) < 1 for n in self.round1_counts):
            raise InvalidInputError(f"round-1 counts must be >= 1, got {self.round1_counts}")
        if any(int(n) < 2 for n in self.round1_counts[:2]):
            raise InvalidInputError("refined axes need at least 2 round-1 samples")
        if any(int(n) < 2 for n in self.round2_counts):
            raise InvalidInputError(f"round-2 counts must be >= 2, got {self.round2_counts}")
        if not (0.0 < self.shrink < 1.0):
            raise InvalidInputError(f"shrink factor must be in (0, 1), got {self.shrink}")

    def round2_spacing(self):
        s1 = grid_spacing(self.space, self.round1_counts)
        return (self.shrink * s1[0], self.shrink * s1[1])


@dataclass
class RoundResult:
    points: list
    breakdowns: list
    norm: Normalization
    incumbent: object = None  # FitnessBreakdown or None

    @property
    def errors(self):
        return [b for b in self.breakdowns if b.error is not None]


@dataclass
class SearchResult:
    spec: GridSpec
    rounds: list
    final: object = None  # FitnessBreakdown or None

    @property
    def incumbents(self):
        return [r.incumbent for r in self.rounds]


def select_incumbent(breakdowns):
    """Highest positive fitness; ties go to the lexicographically smallest geometry."""
    best = None
    for b in breakdowns:
        if b.fitness <= 0:
            continue
        if best is None or (-b.fitness, b.v.as_tuple()) < (-best.fitness, best.v.as_tuple()):
            best = b
    return best


def _collect_metrics(provider, points, threads, context):
    def one(v):
        return safe_endpoint_metrics(provider, v, **context)

    if threads is None or threads <= 1 or len(points) < 2:
        return [one(v) for v in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, points))


def run_round(provider, points, weights=Weights(), gates=Gates(), norm_policy=NormPolicy(),
              previous_norm=None, threads=1, fixed=FixedGeometry(), fluid=FluidProperties(),
              profile=ICProfile(), frequency=DEFAULT_FREQUENCY,
              n_samples=DEFAULT_MONOTONIC_SAMPLES):
    if not points:
        raise InvalidInputError("grid has no points")
    context = dict(fixed=fixed, fluid=fluid, profile=profile, frequency=frequency,
                   n_samples=n_samples)
    metrics = _collect_metrics(provider, points, threads, context)

    if norm_policy.mode == "pinned":
        norm = norm_policy.pinned
    else:
        norm = Normalization.from_metrics(metrics)
        if norm_policy.mode == "cumulative" and previous_norm is not None:
            norm = Normalization.combined(norm, previous_norm)

    breakdowns = [score(m, weights, gates, norm, profile) for m in metrics]
    return RoundResult(points=list(points), breakdowns=breakdowns, norm=norm,
                       incumbent=select_incumbent(breakdowns))


def refinement_points(spec, centre):
    """Round-2 grid around ``centre``: ``(a1, a2)`` refined, ``c2`` frozen."""
    space = spec.space
    axes = []
    for axis, step, count in zip(("a1", "a2"), spec.round2_spacing(), spec.round2_counts):
        lo, hi = space.bounds(axis)
        c = getattr(centre, axis)
        half = step * (count - 1) / 2.0
        axes.append(axis_samples(max(lo, c - half), min(hi, c + half), count))
    points = [centre.replace(a1=a1, a2=a2) for a1 in axes[0] for a2 in axes[1]]
    points = list(dict.fromkeys(points))
    assert all(in_bounds(p, space) for p in points)
    return points


def optimize(provider, spec=GridSpec(), weights=Weights(), gates=Gates(),
             norm_policy=NormPolicy(), threads=1, fixed=FixedGeometry(),
             fluid=FluidProperties(), profile=ICProfile(), frequency=DEFAULT_FREQUENCY,
             n_samples=DEFAULT_MONOTONIC_SAMPLES):
    """Run both search rounds and pick the final incumbent.

    The final pick is made over every point of both rounds, re-scored under
    the last round's normalization.
    """
    kwargs = dict(weights=weights, gates=gates, norm_policy=norm_policy, threads=threads,
                  fixed=fixed, fluid=fluid, profile=profile, frequency=frequency,
                  n_samples=n_samples)
    first = run_round(provider, make_grid(spec.space, spec.round1_counts), **kwargs)
    rounds = [first]
    if first.incumbent is None:
        return SearchResult(spec=spec, rounds=rounds, final=None)

    second = run_round(provider, refinement_points(spec, first.incumbent.v),
                       previous_norm=first.norm, **kwargs)
    rounds.append(second)

    rescored = [score(b.metrics, weights, gates, second.norm, profile)
                for b in first.breakdowns]
    final = select_incumbent(second.breakdowns + rescored)
    return SearchResult(spec=spec, rounds=rounds, final=final)
