"""Data model and validation for content-context systems of random variables.

A system is a finite family of random variables doubly indexed by *content*
(the property being measured) and *context* (the conditions under which it is
measured).  Variables that share a context are jointly distributed through
that context's table; variables in different contexts have no joint
distribution at all.  The set of variables measuring one content across
contexts is that content's *connection*.

All probabilities are exact rationals (fractions.Fraction), so every verdict
downstream is a matter of exact arithmetic rather than tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    DomainMismatch,
    DuplicateContentInContext,
    DuplicateContext,
    EmptySystem,
    InvalidProbability,
    NotPlusMinusOne,
    ProbabilitySumMismatch,
    UnknownContent,
    VariableNotInContext,
)

# Canonical binary outcome labels, used by expectation() and the rank-2
# criterion.  Other outcome sets are fine everywhere else.
PLUS = "+1"
MINUS = "-1"


def to_fraction(value) -> Fraction:
    """Convert an exact probability representation to a Fraction in [0, 1].

    Accepts Fraction, int, and strings in either rational ("3/4") or decimal
    ("0.75") form.  Floats are rejected: a float has already lost exactness
    to binary rounding, and this package promises exact arithmetic.
    """
    if isinstance(value, float):
        raise InvalidProbability(
            f"float probability {value!r} is not exact; pass a string or Fraction"
        )
    if isinstance(value, Fraction):
        frac = value
    elif isinstance(value, int):
        frac = Fraction(value)
    elif isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidProbability(f"cannot parse probability {value!r}: {exc}")
    else:
        raise InvalidProbability(f"unsupported probability type {type(value).__name__}")
    if frac < 0 or frac > 1:
        raise InvalidProbability(f"probability {frac} outside [0, 1]")
    return frac


@dataclass(frozen=True)
class ContextBlock:
    """One context: an ordered tuple of contents and the joint table over them.

    The table maps outcome tuples (components in `contents` order) to exact
    probabilities.  Tuples absent from the table have probability zero; after
    validation the table holds the nonzero support only.
    """

    context: str
    contents: tuple[str, ...]
    table: dict[tuple[str, ...], Fraction]

    def prob(self, cell: tuple[str, ...]) -> Fraction:
        return self.table.get(cell, Fraction(0))


@dataclass(frozen=True)
class System:
    """A validated content-context system.

    outcomes: registry mapping each content id to its outcome label tuple.
    blocks:   context blocks sorted by context id.
    Treat instances as immutable; every derived enumeration (variables,
    atoms, connections) is ordered lexicographically for reproducibility.
    """

    outcomes: dict[str, tuple[str, ...]]
    blocks: tuple[ContextBlock, ...]

    def block(self, context: str) -> ContextBlock:
        for blk in self.blocks:
            if blk.context == context:
                return blk
        raise KeyError(context)

    @property
    def context_ids(self) -> tuple[str, ...]:
        return tuple(blk.context for blk in self.blocks)

    @property
    def content_ids(self) -> tuple[str, ...]:
        """Contents that appear in at least one context, sorted."""
        seen = {q for blk in self.blocks for q in blk.contents}
        return tuple(sorted(seen))

    @property
    def variables(self) -> tuple[tuple[str, str], ...]:
        """All (context, content) variables, sorted lexicographically."""
        pairs = [(blk.context, q) for blk in self.blocks for q in blk.contents]
        return tuple(sorted(pairs))

    def contexts_of(self, content: str) -> tuple[str, ...]:
        return tuple(
            blk.context for blk in self.blocks if content in blk.contents
        )

    def cells(self, context: str):
        """All outcome tuples of a context, in canonical product order."""
        blk = self.block(context)
        return itertools.product(*(self.outcomes[q] for q in blk.contents))


def validate_system(
    outcome_sets: Mapping[str, Sequence[str]],
    blocks: Iterable[tuple[str, Sequence[str], Mapping[tuple[str, ...], object]]],
) -> System:
    """Validate raw system data and return a canonical System.

    `blocks` is an iterable of (context_id, contents, table) triples; table
    values may be anything to_fraction() accepts.  Raises a CbdError subclass
    naming the offending context or content on any violation.
    """
    registry: dict[str, tuple[str, ...]] = {}
    for content, values in outcome_sets.items():
        vals = tuple(values)
        if len(vals) < 2:
            raise DomainMismatch(
                f"content {content!r} needs at least 2 outcomes, got {len(vals)}"
            )
        if len(set(vals)) != len(vals):
            raise DomainMismatch(f"content {content!r} lists duplicate outcomes")
        registry[content] = vals

    seen_contexts: set[str] = set()
    out_blocks: list[ContextBlock] = []
    for context, contents, table in blocks:
        if context in seen_contexts:
            raise DuplicateContext(f"context {context!r} defined twice")
        seen_contexts.add(context)
        contents = tuple(contents)
        if not contents:
            raise DomainMismatch(f"context {context!r} lists no contents")
        for q in contents:
            if contents.count(q) > 1:
                raise DuplicateContentInContext(
                    f"content {q!r} appears twice in context {context!r}"
                )
            if q not in registry:
                raise UnknownContent(
                    f"context {context!r} references unknown content {q!r}"
                )
        support: dict[tuple[str, ...], Fraction] = {}
        total = Fraction(0)
        for cell, raw in table.items():
            cell = tuple(cell)
            if len(cell) != len(contents):
                raise DomainMismatch(
                    f"context {context!r}: outcome tuple {cell} has arity "
                    f"{len(cell)}, expected {len(contents)}"
                )
            for q, o in zip(contents, cell):
                if o not in registry[q]:
                    raise DomainMismatch(
                        f"context {context!r}: outcome {o!r} not in the "
                        f"outcome set of content {q!r}"
                    )
            if cell in support:
                raise DomainMismatch(
                    f"context {context!r}: outcome tuple {cell} listed twice"
                )
            p = to_fraction(raw)
            total += p
            if p != 0:
                support[cell] = p
        if total != 1:
            raise ProbabilitySumMismatch(context, total)
        out_blocks.append(ContextBlock(context, contents, support))

    if not out_blocks:
        raise EmptySystem("a system needs at least one context")
    out_blocks.sort(key=lambda blk: blk.context)
    return System(outcomes=registry, blocks=tuple(out_blocks))


@dataclass(frozen=True)
class Marginal:
    """Distribution of one variable: a content observed in one context.

    probs covers the full outcome set, zeros included, so two marginals of
    the same content compare cell for cell.
    """

    content: str
    context: str
    probs: dict[str, Fraction]


@dataclass(frozen=True)
class Connection:
    """All variables measuring one content, ordered by context id."""

    content: str
    members: tuple[Marginal, ...]


class Consistency(NamedTuple):
    per_connection: dict[str, bool]
    overall: bool


def marginal(system: System, content: str, context: str) -> Marginal:
    """Marginal distribution of `content` inside `context`.

    Sums the context's table over all other contents' outcomes.
    """
    blk = system.block(context)
    if content not in blk.contents:
        raise VariableNotInContext(
            f"content {content!r} not in context {context!r}"
        )
    pos = blk.contents.index(content)
    probs = {o: Fraction(0) for o in system.outcomes[content]}
    for cell, p in blk.table.items():
        probs[cell[pos]] += p
    return Marginal(content=content, context=context, probs=probs)


def connections(system: System) -> list[Connection]:
    """One Connection per content that appears in at least one context."""
    out = []
    for q in system.content_ids:
        members = tuple(
            marginal(system, q, c) for c in system.contexts_of(q)
        )
        out.append(Connection(content=q, members=members))
    return out


def is_consistently_connected(system: System) -> Consistency:
    """Whether every content has identical marginals in all its contexts.

    Returns the per-connection flags and their conjunction.  Connections
    with a single member are trivially consistent.
    """
    per: dict[str, bool] = {}
    for conn in connections(system):
        first = conn.members[0].probs
        per[conn.content] = all(m.probs == first for m in conn.members[1:])
    return Consistency(per_connection=per, overall=all(per.values()))


def expectation(system: System, context: str, contents: Sequence[str]) -> Fraction:
    """Expected product of the named variables inside one context.

    Requires each involved content to use the canonical '+1'/'-1' outcome
    labels.  A single content gives that variable's expectation.
    """
    blk = system.block(context)
    positions = []
    for q in contents:
        if q not in blk.contents:
            raise VariableNotInContext(
                f"content {q!r} not in context {context!r}"
            )
        if set(system.outcomes[q]) != {PLUS, MINUS}:
            raise NotPlusMinusOne(
                f"content {q!r} is not over the '+1'/'-1' outcome labels"
            )
        positions.append(blk.contents.index(q))
    total = Fraction(0)
    for cell, p in blk.table.items():
        sign = 1
        for pos in positions:
            if cell[pos] == MINUS:
                sign = -sign
        total += sign * p
    return total
