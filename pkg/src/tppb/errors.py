"""Exception types shared across the package."""

__all__ = [
    "TppbError",
    "NotLatinSquare",
    "NoIdentityAtZero",
    "NotAssociative",
    "NotAPermutation",
    "OrderLimitExceeded",
    "UnknownFamily",
    "BadParameter",
    "LatticeLimitExceeded",
    "NotASubgroup",
    "EmptySet",
    "UnsortedSizes",
    "IndexOutOfRange",
    "BudgetExceeded",
    "NoRootInRange",
    "DomainError",
    "EigenspaceSplitFailure",
    "PrimeSearchExhausted",
    "InvariantViolation",
    "ParseError",
    "UnknownElement",
    "ManifestError",
]


class TppbError(Exception):
    """Base class for all package-specific errors."""


class NotLatinSquare(TppbError):
    """A multiplication table has a repeated entry in some row or column."""

    def __init__(self, axis: str, index: int):
        self.axis = axis
        self.index = index
        super().__init__(f"{axis} {index} of the table is not a permutation")


class NoIdentityAtZero(TppbError):
    """Row or column 0 of a multiplication table is not the identity map."""


class NotAssociative(TppbError):
    """A multiplication table fails associativity; carries a witness triple."""

    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")


class NotAPermutation(TppbError):
    """A one-line sequence is not a permutation of 1..degree."""


class OrderLimitExceeded(TppbError):
    """A construction would exceed the configured group-order limit."""

    def __init__(self, message: str, partial_count: int | None = None):
        self.partial_count = partial_count
        super().__init__(message)


class UnknownFamily(TppbError):
    """Builtin family name not recognized."""


class BadParameter(TppbError):
    """Builtin family parameter outside its documented range."""


class LatticeLimitExceeded(TppbError):
    """Subgroup enumeration exceeded the configured subgroup-count cap."""


class NotASubgroup(TppbError):
    """An element set expected to be a subgroup is not one."""


class EmptySet(TppbError):
    """An operation requiring a non-empty element set received an empty one."""


class UnsortedSizes(TppbError):
    """Size arguments must satisfy a >= b >= c >= 1."""


class IndexOutOfRange(TppbError):
    """A 1-based lattice index is outside 1..count."""


class BudgetExceeded(TppbError):
    """The triple-check budget ran out before the search finished."""


class NoRootInRange(TppbError):
    """Expected a sign change of D_x - beta^(x/3) on [2, 3] but found none."""


class DomainError(TppbError):
    """Real-exponent degree sums are only defined on the solver domain [2, 3]."""


class EigenspaceSplitFailure(TppbError):
    """Class matrices failed to split a common eigenspace down to dimension 1."""


class PrimeSearchExhausted(TppbError):
    """No admissible prime found below the sanity cap."""


class InvariantViolation(TppbError):
    """Ingested data violates a named invariant."""

    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}")


class ParseError(TppbError):
    """Group-spec text failed to parse; carries the failure position."""

    def __init__(self, text: str, pos: int, detail: str):
        self.pos = pos
        super().__init__(f"cannot parse {text!r} at position {pos}: {detail}")


class UnknownElement(TppbError):
    """An element token does not resolve to an index or label in the group."""


class ManifestError(TppbError):
    """A catalog manifest is malformed or violates its declared order."""
