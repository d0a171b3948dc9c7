"""Exception hierarchy shared by every module."""


class GeometricAlgebraError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(GeometricAlgebraError, ValueError):
    pass


class SingularExtensor(GeometricAlgebraError, ValueError):
    pass


class NotSymmetric(GeometricAlgebraError, ValueError):
    pass


class NoConvergence(GeometricAlgebraError, RuntimeError):
    pass


class Degenerate(GeometricAlgebraError, ValueError):
    """Metric with (numerically) vanishing determinant."""


class NotOrthogonal(GeometricAlgebraError, ValueError):
    pass


class SignatureMismatch(GeometricAlgebraError, ValueError):
    pass


class NotLorentz(GeometricAlgebraError, ValueError):
    pass


class SingularCayley(GeometricAlgebraError, ValueError):
    pass


class ZeroRho(GeometricAlgebraError, ValueError):
    pass


class DegenerateBasis(GeometricAlgebraError, ValueError):
    pass


class MissingTables(GeometricAlgebraError, ValueError):
    pass
