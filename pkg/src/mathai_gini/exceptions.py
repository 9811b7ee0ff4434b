"""Exceptions raised by mathai-gini.

The CLI maps each branch of this hierarchy onto an exit code, so library code
should always raise the most specific class available.
"""


class MathaiGiniError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(MathaiGiniError):
    pass


class ParameterError(MathaiGiniError, ValueError):
    """A parameter lies outside the domain of the requested operation."""


class ShannonLimitError(ParameterError):
    """Raised when alpha = 1 reaches a generalized entropy entry point."""

    def __init__(self, operation: str):
        super().__init__(
            f"{operation} is undefined at alpha = 1, use the Shannon variant instead"
        )
        self.operation = operation


class UnknownFamilyError(ParameterError):
    def __init__(self, name: str, known: tuple[str, ...]):
        super().__init__(
            f"Unknown family {name!r}, expected one of: {', '.join(known)}"
        )
        self.name = name
        self.known = known


class DataError(MathaiGiniError):
    """The input data cannot be used for the requested operation."""


class EmptySampleError(DataError):
    pass


class SampleParseError(DataError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NegativeValueError(DataError):
    pass


class ZeroMeanError(DataError):
    pass


class NumericalError(MathaiGiniError):
    """A numerical procedure failed or its target does not exist."""


class DivergentIntegralError(NumericalError):
    pass


class InfiniteMeanError(NumericalError):
    pass


class NormalizationError(NumericalError):
    pass


class FitError(NumericalError):
    def __init__(self, message: str, trace: dict | None = None):
        super().__init__(message)
        self.trace = trace or {}


class ZeroDensityError(FitError):
    def __init__(self, index: int, value: float, family: str):
        super().__init__(
            f"Observation {index} (x={value!r}) has zero density under {family}",
            trace={"index": index, "value": value},
        )
        self.index = index
        self.value = value
