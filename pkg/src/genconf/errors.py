"""Exception hierarchy.

Every domain failure derives from :class:`GenconfError`, so the CLI can map
domain errors to exit code 1 with a single ``except``.
"""


class GenconfError(Exception):
    """Base class for all domain errors raised by the package."""


class InvalidMultiindex(GenconfError, ValueError):
    pass


class InvalidPermutation(GenconfError, ValueError):
    pass


class InvalidConfiguration(GenconfError, ValueError):
    pass


class SingularMatrix(GenconfError, ZeroDivisionError):
    pass


class NotGeneric(GenconfError, ValueError):
    pass


class SamplingExhausted(GenconfError, RuntimeError):
    pass


class ImageNotAffine(GenconfError, ValueError):
    """An affine configuration was mapped onto the hyperplane at infinity."""


class InvalidDcr(GenconfError, ValueError):
    pass


class InvalidDimension(GenconfError, ValueError):
    pass


class ClassificationContradiction(GenconfError, RuntimeError):
    """A simplex is neither of the first nor of the second type."""


class InducedMapInconsistent(GenconfError, RuntimeError):
    pass


class TheoremViolation(GenconfError, RuntimeError):
    """No correcting permutation exists for the given map."""


class UnsupportedCase(GenconfError, ValueError):
    pass
