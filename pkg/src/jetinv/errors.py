"""Exceptions shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation.

    Raised for non-group elements (leading coefficient zero), singular
    matrices passed where invertibility is required, non-regular jets fed
    to operations defined only on the regular locus, and similar.
    """


class BasisClosureError(RuntimeError):
    """A bracket or conjugation left the span of the algebra basis.

    The jet algebra is closed under these operations, so this always
    signals an implementation bug, never bad user input.
    """


class ResourceCapExceeded(RuntimeError):
    """A weighted-degree computation would exceed the configured size cap."""

    def __init__(self, k, n, m, monomial_count, cap):
        self.k = k
        self.n = n
        self.m = m
        self.monomial_count = monomial_count
        self.cap = cap
        super().__init__(
            f"refusing (k={k}, n={n}, m={m}): {monomial_count} monomials "
            f"exceed the cap of {cap}"
        )
