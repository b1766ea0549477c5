"""Exception types shared across the library."""

from __future__ import annotations


class GralError(Exception):
    """Base class for all library errors."""


class AxiomViolation(GralError):
    """A ring table failed validation; carries the axiom name and a witness."""

    def __init__(self, axiom: str, witness=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"ring axiom violated: {axiom} (witness: {witness!r})")


class SearchCapExceeded(GralError):
    """An exhaustive search would exceed the configured state cap."""

    def __init__(self, states: int, cap: int, what: str = "search"):
        self.states = states
        self.cap = cap
        super().__init__(f"{what} needs {states} states, cap is {cap}")


class XNotRegular(GralError):
    """A relative-Cohn subset X contains a non-regular vertex."""


class UnknownGenerator(GralError):
    """A word mentions a symbol that is not a generator of the algebra."""


class SpecMismatch(GralError):
    """Two elements from different algebra specs were combined."""


class NotDegreeZero(GralError):
    """The element is not homogeneous of degree zero."""


class NotInDn(GralError):
    """The element lies outside the requested filtration level."""


class ZeroElement(GralError):
    """The operation requires a nonzero element."""


class CoefficientRingNotVNR(GralError):
    """The constructive witness machinery requires a von Neumann regular
    coefficient ring."""


class InternalVerificationFailure(GralError):
    """A certificate failed its own re-verification; signals a bug."""


class RelationViolation(GralError):
    """A generator assignment does not respect the defining relations."""

    def __init__(self, relation: str, detail: str = ""):
        self.relation = relation
        super().__init__(f"relation {relation} violated{': ' + detail if detail else ''}")


class NotIdempotent(GralError):
    """The designated corner element is not idempotent."""


class NotCornerIso(GralError):
    """The supplied map is not a ring isomorphism onto the corner."""


class AssertionFailure(GralError):
    """A structural assertion (epsilon relations etc.) failed; carries a
    counterexample description."""


class NotDegreeOneGenerated(GralError):
    """check_strong_Z refuses oracles that do not declare degree-one
    generation."""
