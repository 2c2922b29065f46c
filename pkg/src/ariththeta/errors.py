"""Exception types shared across the package.

Every operation that can fail raises one of these, so callers (in particular
the CLI) can distinguish usage errors from numeric failures.
"""


class ArithThetaError(Exception):
    """Base class for all package errors."""


class ZeroStructureConstant(ArithThetaError):
    """Quaternion algebra constructor received a = 0 or b = 0."""


class AlgebraMismatch(ArithThetaError):
    """Arithmetic attempted between elements of different algebras."""


class SearchExhausted(ArithThetaError):
    """A bounded structure-constant search hit its bound without a hit.

    Signals the bound, not nonexistence.
    """


class DegenerateOrder(ArithThetaError):
    """Trace-zero intersection of an order failed to have rank 3."""


class OrderDataError(ArithThetaError):
    """An order data file violates the Order invariants."""


class BoundTooLarge(ArithThetaError):
    """Predicted lattice enumeration size exceeds the configured safety cap."""


class PreconditionViolation(ArithThetaError):
    """An operation was called outside its documented domain."""


class NonpositiveArgument(ArithThetaError):
    """beta1 requires a strictly positive argument."""


class OnSingularLocus(ArithThetaError):
    """Evaluation point is (numerically) on the singular divisor of a Green function."""


class SingularEvaluation(ArithThetaError):
    """A truncated Green-function sum met a lattice vector whose divisor contains z."""


class SingularConfiguration(ArithThetaError):
    """Star product demanded for two Green functions with a common divisor."""


class QuadratureFailure(ArithThetaError):
    """Adaptive quadrature could not certify the requested tolerance."""


class UnsupportedDiscriminant(ArithThetaError):
    """Orbit machinery exists only for the split (discriminant 1) model."""


class NotSquarefree(ArithThetaError):
    """A squarefree integer was required."""


class InconclusiveScan(ArithThetaError):
    """A bounded prime scan ended without covering all mandatory candidates."""
