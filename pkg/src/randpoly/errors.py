"""Exception types shared across the package."""


class RandpolyError(Exception):
    """Base class for all package errors."""


class ValidationError(RandpolyError):
    """Bad user-supplied parameters (dimension, counts, config)."""


class InvalidDimension(ValidationError):
    pass


class InsufficientPoints(ValidationError):
    pass


class RankDeficient(RandpolyError):
    """Points meant to span a hyperplane are affinely dependent."""


class DegenerateInput(RandpolyError):
    """A hull step needed strict sidedness but found an incident point.

    For continuous input distributions this is a probability-zero event;
    the pipeline reacts by resampling the replicate.
    """


class TooManyDegenerateResamples(RandpolyError):
    """Resampling on DegenerateInput failed repeatedly; input is suspect."""


class MalformedFacet(RandpolyError):
    """Facet tuple with wrong arity or duplicate vertex indices."""


class EmptySample(RandpolyError):
    pass


class DegenerateCovariance(RandpolyError):
    """Covariance has no positive eigenvalue (all samples identical)."""


class NoConvergence(RandpolyError):
    """Eigensolver sweep cap exhausted."""


class DimensionMismatch(RandpolyError):
    pass


class MalformedDataset(RandpolyError):
    """Dataset file is empty, ragged, or non-numeric."""
