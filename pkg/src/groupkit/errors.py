"""Exception hierarchy shared by all groupkit modules."""

from __future__ import annotations


class GroupKitError(Exception):
    """Base class for all groupkit errors."""


class InvalidRecipe(GroupKitError):
    """A construction recipe is malformed (bad parameter, unparseable DSL)."""


class InvalidAction(InvalidRecipe):
    """A semidirect action does not define a homomorphism into Aut(N)."""


class NotCentral(InvalidRecipe):
    """Central-quotient generators generate a non-central subgroup."""


class OrderBound(GroupKitError):
    """A requested computation exceeds a configured order cap."""

    def __init__(self, order: int, cap: int, what: str = "group order"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} {order} exceeds cap {cap}")


class TableError(GroupKitError):
    """Base class for multiplication-table validation failures."""


class MalformedTable(TableError):
    """Table is not a square array of indices in [0, n)."""


class NoIdentity(TableError):
    """Index 0 does not act as a two-sided identity."""


class NotLatin(TableError):
    """A row or column is not a permutation of 0..n-1."""

    def __init__(self, axis: str, index: int, value: int):
        self.axis = axis
        self.index = index
        self.value = value
        super().__init__(f"{axis} {index} repeats value {value}")


class NotInvertible(TableError):
    """No two-sided inverse exists for an element."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"element {index} has no two-sided inverse")


class NotAssociative(TableError):
    """Associativity fails on a witness triple."""

    def __init__(self, i: int, j: int, k: int):
        self.witness = (i, j, k)
        super().__init__(f"(g{i}*g{j})*g{k} != g{i}*(g{j}*g{k})")


class IndexOutOfRange(GroupKitError, IndexError):
    """An element index is outside [0, |G|)."""


class NotNormal(GroupKitError):
    """A subgroup argument must be normal in its parent."""


class NotPrime(GroupKitError):
    """An argument must be a prime number."""


class NotASplitting(GroupKitError):
    """A pair of subgroups is not an internal direct splitting."""


class PreconditionFailed(GroupKitError):
    """An operation's documented precondition does not hold."""
