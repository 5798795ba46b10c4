"""Exception hierarchy for domain errors raised by the library."""


class MinkConicError(ValueError):
    """Base class for all domain errors (CLI exit code 3)."""


class NullDirectrix(MinkConicError):
    """The directrix direction is lightlike (a**2 == c**2)."""


class DegenerateDirectrix(MinkConicError):
    """The directrix has (a, c) == (0, 0) and is a point, not a line."""


class DegeneratePlane(MinkConicError):
    """The defining equation holds on the whole plane."""
