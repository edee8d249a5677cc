"""Domain errors raised by this package.

Everything user-facing derives from CbdError so callers (and the CLI) can
catch one type and map it to a nonzero exit without masking real bugs.
"""

from __future__ import annotations

from fractions import Fraction


class CbdError(Exception):
    """Base class for all domain errors."""


class EmptySystem(CbdError):
    """A system must contain at least one context."""


class DuplicateContext(CbdError):
    """Two context blocks share the same context id."""


class DuplicateContentInContext(CbdError):
    """A context lists the same content twice (same content, same context,
    two variables is not representable)."""


class UnknownContent(CbdError):
    """A context references a content id missing from the registry."""


class DomainMismatch(CbdError):
    """Outcome data does not fit the declared outcome set: wrong tuple arity,
    an outcome label outside the content's set, or two marginals over
    different outcome sets."""


class InvalidProbability(CbdError):
    """A probability is negative, above 1, or not an exact rational."""


class ProbabilitySumMismatch(CbdError):
    """A context distribution does not sum to exactly 1."""

    def __init__(self, context: str, total: Fraction):
        self.context = context
        self.total = total
        super().__init__(
            f"distribution of context {context!r} sums to {total}, expected 1"
        )


class VariableNotInContext(CbdError):
    """The requested content does not appear in the given context."""


class NotPlusMinusOne(CbdError):
    """Operation requires the canonical binary outcome labels '+1'/'-1'."""


class NotBinary(CbdError):
    """Operation requires binary outcome sets."""


class AtomCapExceeded(CbdError):
    """The coupling LP would need more atoms than the configured cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"coupling LP needs {required} atoms, above the cap of {cap}; "
            f"raise it with --atom-cap or CBD_ATOM_CAP"
        )


class NotDeterministic(CbdError):
    """The system has at least one non-point-mass context distribution."""


class NotCyclicRank2(CbdError):
    """The system is not a cyclic system of rank 2."""


class CapExceeded(CbdError):
    """The deterministic-variant assignment space exceeds the configured cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"assignment space has {required} points, above the cap of {cap}"
        )


class EmptyVariantSet(CbdError):
    """No deterministic variant satisfies some context's constraint."""


class SystemFileError(CbdError):
    """A system file cannot be parsed: bad JSON or bad structure."""
