"""JSON run configuration.

Every key carries its unit (``_mm``, ``_pf``, ``_hz``...) and unknown keys
are rejected, so a mistyped or mis-scaled field fails loudly at load time.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .em import DEFAULT_FREQUENCY, SurrogateCalibration, SurrogateProvider, load_dataset
from .errors import CodesignError, ConfigError
from .fitness import DEFAULT_MONOTONIC_SAMPLES, Gates, Normalization, Weights
from .geometry import FixedGeometry, FluidProperties, ParameterSpace, ParameterVector
from .ic import ICProfile
from .optimizer import GridSpec, NormPolicy


@dataclass
class RunConfig:
    profile: ICProfile = field(default_factory=ICProfile)
    fixed: FixedGeometry = field(default_factory=FixedGeometry)
    space: ParameterSpace = field(default_factory=ParameterSpace)
    weights: Weights = field(default_factory=Weights)
    gates: Gates = field(default_factory=Gates)
    norm_policy: NormPolicy = field(default_factory=NormPolicy)
    frequency: float = DEFAULT_FREQUENCY
    fluid: FluidProperties = field(default_factory=FluidProperties)
    grid: GridSpec = field(default_factory=GridSpec)
    monotonic_samples: int = DEFAULT_MONOTONIC_SAMPLES
    provider: object = None
    provider_description: dict = field(default_factory=dict)
    output_dir: Path | None = None

    def context(self):
        """Keyword arguments shared by the fitness, optimizer and analysis calls."""
        return dict(fixed=self.fixed, fluid=self.fluid, profile=self.profile,
                    frequency=self.frequency)

    def echo(self):
        """JSON-friendly summary of the configuration."""
        norm = {"mode": self.norm_policy.mode}
        if self.norm_policy.pinned is not None:
            norm.update(g0_linear=self.norm_policy.pinned.gain,
                        s0_per_mg=self.norm_policy.pinned.sensitivity)
        return {
            "ic": {"conductance_s": self.profile.conductance, "c_min_pf": self.profile.c_min,
                   "c_max_pf": self.profile.c_max, "s_min": self.profile.s_min,
                   "s_max": self.profile.s_max},
            "fixed": {"a3_mm": self.fixed.a3, "c1_mm": self.fixed.c1,
                      "ic_gap_mm": self.fixed.ic_gap},
            "space": {"a1_mm": list(self.space.a1), "a2_mm": list(self.space.a2),
                      "c2_mm": list(self.space.c2)},
            "weights": {"w1": self.weights.dynamic_range, "w2": self.weights.gain,
                        "w3": self.weights.sensitivity},
            "gates": {"g_min_dbi": None if math.isinf(self.gates.min_gain_dbi)
                      else self.gates.min_gain_dbi,
                      "s_min_per_mg": self.gates.min_sensitivity},
            "normalization": norm,
            "frequency_hz": self.frequency,
            "fluid": {"density_mg_per_mm3": self.fluid.density},
            "grid": {"round1_counts": list(self.grid.round1_counts),
                     "round2_counts": list(self.grid.round2_counts),
                     "shrink": self.grid.shrink,
                     "monotonic_samples": self.monotonic_samples},
            "provider": self.provider_description,
        }


def _section(doc, name, allowed):
    sec = doc.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"{name!r} must be an object")
    unknown = set(sec) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {name!r}: {sorted(unknown)}")
    return sec


def _bounds(sec, key, default):
    value = sec.get(key, default)
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ConfigError(f"space.{key} must be a [min, max] pair")
    return (float(value[0]), float(value[1]))


_CAL_CODE_KEYS = {"code_empty", "code_full", "gt_empty_dbi", "gt_full_dbi"}
_CAL_RAW_KEYS = {"ba_empty_s", "ba_full_s", "grad_empty_dbi", "grad_full_dbi"}
_CAL_OPTIONAL = {"ga_empty_s", "ga_full_s", "shape"}
_GEOM_KEYS = {"a1_mm", "a2_mm", "c2_mm"}


def _calibration(entry, profile, frequency, where):
    keys = set(entry)
    unknown = keys - _CAL_CODE_KEYS - _CAL_RAW_KEYS - _CAL_OPTIONAL - _GEOM_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")
    shape = float(entry.get("shape", 1.0))
    ga_empty = entry.get("ga_empty_s")
    ga_full = entry.get("ga_full_s")
    if _CAL_CODE_KEYS <= keys and not keys & _CAL_RAW_KEYS:
        return SurrogateCalibration.from_codes(
            profile, int(entry["code_empty"]), int(entry["code_full"]),
            float(entry["gt_empty_dbi"]), float(entry["gt_full_dbi"]), frequency,
            ga_empty=ga_empty, ga_full=ga_full, shape=shape)
    if _CAL_RAW_KEYS <= keys and not keys & _CAL_CODE_KEYS:
        return SurrogateCalibration(
            ba_empty=float(entry["ba_empty_s"]), ba_full=float(entry["ba_full_s"]),
            grad_empty=float(entry["grad_empty_dbi"]), grad_full=float(entry["grad_full_dbi"]),
            ga_empty=profile.conductance if ga_empty is None else float(ga_empty),
            ga_full=profile.conductance if ga_full is None else float(ga_full),
            shape=shape, frequency=frequency)
    raise ConfigError(f"{where} needs either {sorted(_CAL_CODE_KEYS)} or {sorted(_CAL_RAW_KEYS)}")


def _provider(doc, base, profile, frequency):
    sec = _section(doc, "provider", ("dataset", "surrogate"))
    if len(sec) != 1:
        raise ConfigError("provider must configure exactly one of 'dataset' or 'surrogate'")
    if "dataset" in sec:
        path = Path(sec["dataset"])
        if not path.is_absolute():
            path = base / path
        if not path.is_file():
            raise ConfigError(f"dataset file not found: {path}")
        return load_dataset(path), {"dataset": str(sec["dataset"])}

    sur = sec["surrogate"]
    if not isinstance(sur, dict) or set(sur) - {"default", "geometries"}:
        raise ConfigError("provider.surrogate takes 'default' and/or 'geometries'")
    default = None
    if sur.get("default") is not None:
        default = _calibration(sur["default"], profile, frequency, "provider.surrogate.default")
    table = {}
    for i, entry in enumerate(sur.get("geometries", [])):
        where = f"provider.surrogate.geometries[{i}]"
        if not _GEOM_KEYS <= set(entry):
            raise ConfigError(f"{where} needs {sorted(_GEOM_KEYS)}")
        v = ParameterVector(float(entry["a1_mm"]), float(entry["a2_mm"]), float(entry["c2_mm"]))
        if v in table:
            raise ConfigError(f"{where} repeats geometry {v}")
        table[v] = _calibration(entry, profile, frequency, where)
    if default is None and not table:
        raise ConfigError("provider.surrogate has no calibrations")
    return SurrogateProvider(table, default=default), {"surrogate": sur}


def parse_config(doc, base=Path(".")):
    top = {"ic", "fixed", "space", "weights", "gates", "normalization", "frequency_hz",
           "fluid", "grid", "provider", "output_dir"}
    unknown = set(doc) - top
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    if "provider" not in doc:
        raise ConfigError("config needs a 'provider' section")
    try:
        ic = _section(doc, "ic", ("conductance_s", "c_min_pf", "c_max_pf", "s_min", "s_max"))
        d = ICProfile()
        profile = ICProfile(
            conductance=float(ic.get("conductance_s", d.conductance)),
            c_min=float(ic.get("c_min_pf", d.c_min)), c_max=float(ic.get("c_max_pf", d.c_max)),
            s_min=int(ic.get("s_min", d.s_min)), s_max=int(ic.get("s_max", d.s_max)))

        fx = _section(doc, "fixed", ("a3_mm", "c1_mm", "ic_gap_mm"))
        fixed = FixedGeometry(float(fx.get("a3_mm", 1.0)), float(fx.get("c1_mm", 1.0)),
                              float(fx.get("ic_gap_mm", 1.0)))

        sp = _section(doc, "space", ("a1_mm", "a2_mm", "c2_mm"))
        space = ParameterSpace(_bounds(sp, "a1_mm", (0, 8)), _bounds(sp, "a2_mm", (5, 15)),
                               _bounds(sp, "c2_mm", (1, 2.5)))

        w = _section(doc, "weights", ("w1", "w2", "w3"))
        weights = Weights(float(w.get("w1", 1)), float(w.get("w2", 1)), float(w.get("w3", 1)))

        g = _section(doc, "gates", ("g_min_dbi", "s_min_per_mg"))
        g_min = g.get("g_min_dbi")
        gates = Gates(-math.inf if g_min is None else float(g_min),
                      float(g.get("s_min_per_mg", 0.0)))

        n = _section(doc, "normalization", ("mode", "g0_linear", "s0_per_mg"))
        mode = n.get("mode", "pinned" if ("g0_linear" in n or "s0_per_mg" in n) else "round")
        pinned = None
        if mode == "pinned":
            if not {"g0_linear", "s0_per_mg"} <= set(n):
                raise ConfigError("pinned normalization needs g0_linear and s0_per_mg")
            pinned = Normalization(float(n["g0_linear"]), float(n["s0_per_mg"]))
        norm_policy = NormPolicy(mode, pinned)

        frequency = float(doc.get("frequency_hz", DEFAULT_FREQUENCY))
        if not frequency > 0:
            raise ConfigError("frequency_hz must be > 0")

        fl = _section(doc, "fluid", ("density_mg_per_mm3",))
        fluid = FluidProperties(float(fl.get("density_mg_per_mm3", 1.0)))

        gr = _section(doc, "grid", ("round1_counts", "round2_counts", "shrink",
                                    "monotonic_samples"))
        grid = GridSpec(space=space,
                        round1_counts=tuple(int(c) for c in gr.get("round1_counts", (5, 5, 4))),
                        round2_counts=tuple(int(c) for c in gr.get("round2_counts", (5, 5))),
                        shrink=float(gr.get("shrink", 0.5)))
        samples = int(gr.get("monotonic_samples", DEFAULT_MONOTONIC_SAMPLES))
        if samples < 3:
            raise ConfigError("grid.monotonic_samples must be >= 3")

        provider, description = _provider(doc, base, profile, frequency)
    except ConfigError:
        raise
    except (CodesignError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    out = doc.get("output_dir")
    return RunConfig(profile=profile, fixed=fixed, space=space, weights=weights, gates=gates,
                     norm_policy=norm_policy, frequency=frequency, fluid=fluid, grid=grid,
                     monotonic_samples=samples, provider=provider,
                     provider_description=description,
                     output_dir=None if out is None else base / out)


def load_config(path):
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return parse_config(doc, base=path.parent)
