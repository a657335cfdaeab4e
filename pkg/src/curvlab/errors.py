"""Exception types shared across the package."""


class CurvlabError(Exception):
    """Base class for all errors raised by curvlab."""


class DomainError(CurvlabError, ValueError):
    """A parameter point lies outside a non-periodic chart interval."""


class DegenerateImmersionError(CurvlabError):
    """The first-derivative matrix lost full column rank at a point."""


class UnknownImmersionError(CurvlabError, LookupError):
    """Requested catalog entry does not exist."""


class ImmersionFileError(CurvlabError, ValueError):
    """A custom immersion file failed validation; message names the field."""


class ReachExceededError(CurvlabError):
    """Tube radius too large for the declared safe bound at this surface."""


class UnsupportedDimensionError(CurvlabError):
    """Operation not defined for this intrinsic dimension or codimension."""
