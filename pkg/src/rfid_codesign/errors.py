"""Exception types shared across the package."""


class CodesignError(Exception):
    """Base class for all package errors."""


class InvalidInputError(CodesignError, ValueError):
    """A numeric input is non-finite, negative, or otherwise unusable."""


class OutOfRangeError(CodesignError, ValueError):
    """A value falls outside the interval an operation is defined on."""


class CoverageError(CodesignError, LookupError):
    """An EM provider has no data for the requested geometry or frequency."""


class DatasetError(CodesignError, ValueError):
    """A dataset file could not be parsed."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class ConfigError(CodesignError, ValueError):
    """A run configuration is missing fields or inconsistent."""
