class GradeKitError(Exception):
    """Base class for domain errors raised by gradekit."""


class ConductorMismatch(GradeKitError, ValueError):
    pass


class DimensionMismatch(GradeKitError, ValueError):
    pass


class AlgebraError(GradeKitError):
    pass


class AutomorphismError(GradeKitError):
    pass


class GradingError(GradeKitError):
    pass


class ConductorTooSmall(GradeKitError):
    def __init__(self, message, needed):
        super().__init__(message)
        self.needed = needed


class RealFormError(GradeKitError):
    pass


class Inconclusive(GradeKitError):
    pass


class SchemaError(GradeKitError, ValueError):
    pass
