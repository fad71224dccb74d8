"""Joint design of self-tuning UHF RFID antennas and microfluidic channels."""

__version__ = "0.1.0"

from .errors import (CodesignError, ConfigError, CoverageError, DatasetError,  # noqa: E402
                     InvalidInputError, OutOfRangeError)
from .geometry import (DerivedGeometry, FixedGeometry, FluidProperties,  # noqa: E402
                       ParameterSpace, ParameterVector, derive_geometry, in_bounds,
                       liquid_capacity, make_grid)
from .ic import (ICProfile, SensorReading, capacitance_of_code, code_of_susceptance,  # noqa: E402
                 differential_code, susceptance_of_code, tuning_residual)
from .em import (EMQuery, EMSample, FunctionProvider, Materials, SurrogateCalibration,  # noqa: E402
                 SurrogateProvider, TabulatedProvider, load_dataset, power_transfer,
                 realized_gain, write_dataset)
from .fluid import FillState, fill_from_mass, mass_from_fill  # noqa: E402
from .fitness import (FitnessBreakdown, Gates, Normalization, Weights,  # noqa: E402
                      check_monotonic, combine, evaluate, sensitivity)
from .optimizer import GridSpec, NormPolicy, SearchResult, optimize, run_round  # noqa: E402
from .analysis import CubicFit, compare, fit_cubic, reading_range, sweep  # noqa: E402

__all__ = [
    "__version__",
    "CodesignError",
    "ConfigError",
    "CoverageError",
    "DatasetError",
    "InvalidInputError",
    "OutOfRangeError",
    "DerivedGeometry",
    "FixedGeometry",
    "FluidProperties",
    "ParameterSpace",
    "ParameterVector",
    "derive_geometry",
    "in_bounds",
    "liquid_capacity",
    "make_grid",
    "ICProfile",
    "SensorReading",
    "capacitance_of_code",
    "code_of_susceptance",
    "differential_code",
    "susceptance_of_code",
    "tuning_residual",
    "EMQuery",
    "EMSample",
    "FunctionProvider",
    "Materials",
    "SurrogateCalibration",
    "SurrogateProvider",
    "TabulatedProvider",
    "load_dataset",
    "power_transfer",
    "realized_gain",
    "write_dataset",
    "FillState",
    "fill_from_mass",
    "mass_from_fill",
    "FitnessBreakdown",
    "Gates",
    "Normalization",
    "Weights",
    "check_monotonic",
    "combine",
    "evaluate",
    "sensitivity",
    "GridSpec",
    "NormPolicy",
    "SearchResult",
    "optimize",
    "run_round",
    "CubicFit",
    "compare",
    "fit_cubic",
    "reading_range",
    "sweep",
]
