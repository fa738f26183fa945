"""Shared error types for diagram and move legality."""

from .curves import CurveError


class DomainMismatchError(ValueError):
    """Operands live on different surfaces."""


class IllegalSlideError(ValueError):
    """Band slide preconditions violated (mover meets over, etc.)."""


class IllegalPathError(ValueError):
    """A guiding path is not embedded or touches the curves it must avoid."""


class IllegalDestabilizationError(ValueError):
    """The requested triple is not a certified destabilization site."""


class ValidationError(ValueError):
    """A diagram fails its structural validity conditions."""


class ArcSearchExhausted(RuntimeError):
    """The bounded arc-generation search ran out of budget."""


MalformedCurveError = CurveError
