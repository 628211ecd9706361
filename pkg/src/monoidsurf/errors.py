"""Exception hierarchy shared across the package."""


class MonoidError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(MonoidError):
    """Malformed or out-of-domain input (dimension mismatch, zero where nonzero needed)."""


class ParseError(InputError):
    """Syntax error in polynomial text; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class InhomogeneousError(InputError):
    """A polynomial expected to be homogeneous is not."""


class NotSquarefree(InputError):
    """Operation requires a squarefree polynomial; decompose first."""


class ZeroPart(InputError):
    """f_{d-1} or f_d is identically zero."""


class DegreeMismatch(InputError):
    """Degrees of the two monoid parts do not differ by exactly one."""


class CommonFactor(MonoidError):
    """The two parts share a nonconstant factor (reducible monoid)."""

    def __init__(self, factor, message=None):
        super().__init__(message or f"common factor {factor}")
        self.factor = factor


class CommonSingularPoint(MonoidError):
    """Tangent cone and intersection with infinity share a singular point (singular line)."""

    def __init__(self, location, message=None):
        super().__init__(message or f"common singular point at {location}")
        self.location = location


class SingularLineDetected(CommonSingularPoint):
    """Quartic invariant constraints imply a singular line on the monoid."""


class NotAMonoid(InputError):
    """A whole-surface equation does not split as x0*f_{d-1} + f_d with rational apex."""


class BasePoint(MonoidError):
    """The natural parameterization is undefined at a base point."""


class CannotProjectApex(InputError):
    """Projection from the monoid point is undefined at the point itself."""


class NotABasePoint(InputError):
    """Operation requires a base point of the monoid."""


class NotACommonZero(InputError):
    """Transversality test requires a common zero of both curves."""


class IdenticallyZero(MonoidError):
    """A pullback vanished identically: the parameterized curve is a component."""


class CommonFactorThroughP(MonoidError):
    """Local intersection length is infinite: a common component passes through the point."""


class GenericityFailure(MonoidError):
    """No shear in the retry budget separated the intersection points."""

    def __init__(self, message, tried=()):
        super().__init__(message)
        self.tried = tuple(tried)


class InfiniteZeroLocus(MonoidError):
    """A zero-dimensional locus was expected but a curve component was found."""


class NotACubic(InputError):
    """Quartic tangent-cone analysis needs a nonzero ternary cubic."""


class NotSingularPoint(InputError):
    """Point is not a singular point of the given curve."""


class ConstraintViolation(MonoidError):
    """A classification constraint failed; message quotes the violated clause."""


class LedgerMismatch(MonoidError):
    """Internal inconsistency between two independently computed ledgers."""


class HessianDegenerate(MonoidError):
    """An A_1 record produced a rank-deficient Hessian (internal inconsistency)."""


class ConditionUnsatisfiable(MonoidError):
    """A construction compatibility condition has no rational solution."""


class SpecLedgerMismatch(InputError):
    """A construction spec violates its case's ledger equations."""


class RoundTripMismatch(MonoidError):
    """Classification of a constructed monoid does not reproduce its spec."""


class ConstructionFailed(MonoidError):
    """Bounded retries exhausted while building a verified construction."""
