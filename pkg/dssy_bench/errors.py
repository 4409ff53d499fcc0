class DssyError(Exception):
    """
    Base class for every error raised by dssy_bench.

    ``exit_code`` is what the command line returns when the error reaches it.
    """
    exit_code = 1

    def __init__(self, message='', **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self):
        return self.message


class BadParam(DssyError):
    """Invalid user supplied parameter (flag, setting or argument)."""
    exit_code = 2


class BadVariant(BadParam):
    """Unknown DSSY variant l."""


class SingularMap(DssyError):
    """Degenerate or bow-tie quadrilateral, det(A) vanishes."""


class NotUnisolvent(DssyError):
    """Midpoint DOFs do not determine the nonparametric shape space."""


class Degenerate(DssyError):
    """Degenerate geometry, such as a non-convex intermediate cell."""


class ConvexityFailure(DssyError):
    """A mesh generator could not produce convex cells."""


class NonManifold(DssyError):
    """An edge is shared by more than two cells."""


class SingularInterior(DssyError):
    """Interior block of a local matrix cannot be eliminated."""


class MeshFormatError(DssyError):
    """Malformed mesh file."""


class OutputError(DssyError):
    """A result file could not be written."""


class NoConvergence(DssyError):
    """
    An iterative solver stopped before reaching its tolerance.

    The best iterate, its residual and the iteration count are attached.
    """

    def __init__(self, message='', x=None, residual=None, iterations=None):
        super().__init__(
            message, x=x, residual=residual, iterations=iterations)
        self.x = x
        self.residual = residual
        self.iterations = iterations
