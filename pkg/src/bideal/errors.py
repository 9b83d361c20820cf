"""Exception types shared across the package.

``DomainError`` subclasses mark inputs that are well-formed but
mathematically inadmissible for the requested computation; the CLI maps
them to exit status 2 and prints ``<slug>: <message>`` on stderr.
Malformed-input problems raise ``ValueError`` (or a subclass) instead.
"""


class DomainError(Exception):

    slug = "domain-error"


class DuplicateHyperplaneError(DomainError):
    """Two input forms are proportional, i.e. define the same hyperplane."""

    slug = "duplicate-hyperplane"


class NotAFlatError(DomainError):
    """An index set is not closed, so it is not the J-set of any flat."""

    slug = "not-a-flat"


class EmptyArrangementError(DomainError):
    """An operation that needs at least one hyperplane got none."""

    slug = "empty-arrangement"


class NotLogarithmicError(DomainError):
    """A derivation does not preserve every hyperplane ideal."""

    slug = "not-logarithmic"

    def __init__(self, message, derivation_index=None, form_index=None):
        super().__init__(message)
        self.derivation_index = derivation_index
        self.form_index = form_index


class NotIrreducibleError(DomainError):
    """An operation restricted to irreducible arrangements got a product."""

    slug = "not-irreducible"


class FreenessRequiredError(DomainError):
    """A computation valid only for free arrangements was not given a
    Free verdict (and no explicit override)."""

    slug = "freeness-required"


class InvalidFormError(ValueError):
    """A linear form is zero or has the wrong number of coordinates."""


class InvalidParameterError(ValueError):
    """A named family was requested with an out-of-range parameter."""


class InvalidIndexError(IndexError):
    """A hyperplane index lies outside 1..p."""


class AsymmetryError(Exception):
    """A factored polynomial is not invariant under the reflection
    s_i -> -s_i - 2; on a generator this signals a bug, not bad input."""
