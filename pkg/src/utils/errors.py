"""Exception hierarchy shared by the library and the command line."""

from typing import Optional


class GpEstError(Exception):
    """Base class for every error raised by this package"""


class ArgumentError(GpEstError, ValueError):
    """Invalid input: dimension mismatch, non-finite values, out-of-domain points"""


class NumericalError(GpEstError, ArithmeticError):
    """Factorization failed even at the largest allowed jitter"""

    def __init__(self, message: str, jitter: Optional[float] = None, condition_number: Optional[float] = None):
        self.jitter = jitter
        self.condition_number = condition_number
        details = []
        if jitter is not None:
            details.append(f"jitter={jitter:.3g}")
        if condition_number is not None:
            details.append(f"cond={condition_number:.3g}")
        super().__init__(f"{message} ({', '.join(details)})" if details else message)


class ConfigError(GpEstError, ValueError):
    """Malformed or unknown configuration entries"""


class HistoryParseError(GpEstError, ValueError):
    """History CSV that cannot be parsed; line numbers are 1-based file lines"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class OracleError(GpEstError, RuntimeError):
    """Objective evaluation failed during a run"""

    def __init__(self, message: str, round_index: int):
        self.round_index = round_index
        super().__init__(f"round {round_index}: {message}")


class ReportInputError(GpEstError, ValueError):
    """rounds.csv that is missing columns or data rows"""
