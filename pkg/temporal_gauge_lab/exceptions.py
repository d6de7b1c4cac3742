"""
Exceptions Module
=================

Error types raised by the temporal gauge laboratory. All of them derive from
ValueError so callers that only guard against bad input keep working.
"""


class TemporalGaugeError(ValueError):
    """Base class for every domain error raised by the package"""


class MeanModeUnsupported(TemporalGaugeError):
    """An operation is undefined on the k = 0 mean sector of a test function"""


class UnsupportedState(TemporalGaugeError):
    """The requested quantity does not exist for the given state"""


class DegreeUnsupported(TemporalGaugeError):
    """Polynomial degree outside the range the Gram builder handles"""


class NotQuasiPolynomial(TemporalGaugeError):
    """A time correlation cannot be written as a finite quasi-polynomial"""


class ConfigError(TemporalGaugeError):
    """Configuration file or override violates the schema"""


class ResultFormatError(TemporalGaugeError):
    """A result file could not be parsed back into its record structure"""
