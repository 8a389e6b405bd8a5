from __future__ import annotations


class OmegaRelError(Exception):
    """Base class for every error raised by omegarel."""


class ConfigurationError(OmegaRelError):
    """A logic/flavor combination that does not form a semiring, or an unknown name."""


class BoundaryError(OmegaRelError):
    """Variable boundaries that do not fit the requested operation."""


class CompositionError(BoundaryError):
    """Two relations cannot be composed (binding mismatch or name collision)."""


class SupportError(OmegaRelError):
    """A tuple, element or weight does not type-check against its declared supports."""


class DiagramError(OmegaRelError):
    """An ill-formed multi-diagram, or one that violates an operation's precondition."""
