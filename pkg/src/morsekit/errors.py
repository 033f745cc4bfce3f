"""Exception types shared across the package."""


class MorsekitError(Exception):
    """Base class for all package-specific failures."""


class NoBoundStatesError(MorsekitError):
    """The well is too shallow to hold a single bound state (nu <= 1)."""


class OrderingAmbiguityError(MorsekitError):
    """Two distinct level keys evaluate to exactly the same energy.

    Raised when the exact-arithmetic tie-break cannot separate two levels,
    which means the declared arithmetic type of p is inconsistent with the
    requested total order.
    """


class QuadratureAccuracyError(MorsekitError):
    """A quadrature result changed too much under refinement to be trusted."""
