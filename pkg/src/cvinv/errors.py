"""Exception hierarchy.

Configuration problems derive from :class:`ConfigurationError` (a
``ValueError``) so the CLI can map all of them to one exit code.
"""
import numpy as np


class ConfigurationError(ValueError):
    """Invalid node/multiplicity input."""

    field = None


class LengthMismatch(ConfigurationError):
    field = "multiplicities"


class EmptyConfiguration(ConfigurationError):
    field = "nodes"


class DuplicateNode(ConfigurationError):
    field = "nodes"


class NonpositiveMultiplicity(ConfigurationError):
    field = "multiplicities"


class OrderTooLarge(ConfigurationError):
    field = "multiplicities"


class SingleNode(ValueError):
    """Separation is undefined for a single node."""


class SamplingExhausted(RuntimeError):
    """Rejection sampling ran out of attempts."""


class SingularAtCenter(ZeroDivisionError):
    """A series reciprocal was requested at a root of the polynomial."""


class HypothesisViolated(ValueError):
    """Some node lies outside the closed unit disk."""


class NumericallySingular(np.linalg.LinAlgError):
    """LU elimination met a pivot below the underflow floor."""

    def __init__(self, msg, column=None):
        super().__init__(msg)
        self.column = column
