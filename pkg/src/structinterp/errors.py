class StructInterpError(Exception):
    """Base class for all errors raised by structinterp."""


class InfeasibleDataError(StructInterpError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"interpolation data is infeasible ({len(self.violations)} violations): {lines}")


class ConstraintError(StructInterpError, ValueError):
    """A parameter matrix does not satisfy the constraint of its symmetry class."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message} (residual {residual:.3e})")


class SingularMatrixError(StructInterpError, ValueError):
    pass


class IllConditionedError(StructInterpError, ArithmeticError):
    """Numerical failure: a linear system is too ill-conditioned to trust."""

    def __init__(self, message, cluster=None):
        self.cluster = cluster
        super().__init__(message)
