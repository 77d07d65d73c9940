"""Exception hierarchy shared by every subpackage."""


class SmithcalcError(Exception):
    """Base class for all errors raised by smithcalc."""


class MalformedInputError(SmithcalcError, ValueError):
    """Input data does not describe a valid object (bad keys, duplicates, schema)."""


class NotSimplicialError(MalformedInputError):
    """A vertex assignment sends some simplex to a non-simplex."""


class NonRegularActionError(SmithcalcError):
    """A fixed-point operation was requested for a non-regular action."""


class NotInvariantError(SmithcalcError):
    """A function or kernel is not constant along group orbits."""


class RingMismatchError(SmithcalcError):
    """Operands live over different coefficient rings."""


class RefinementNeededError(SmithcalcError):
    """A fan or complex is too coarse for the requested operation."""


class InternalConsistencyError(SmithcalcError):
    """Two independent computations that must agree did not."""


class UnsupportedError(SmithcalcError):
    """The request is outside the supported range (dimension, field size...)."""
