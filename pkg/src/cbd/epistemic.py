"""Systems built from truth assignments under per-context constraints.

An epistemic specification fixes, per context, which joint outcome tuples are
admissible (for binary variables: the two must agree, or must differ, or any
explicitly listed set).  A deterministic variant assigns one admissible
outcome to every variable; note a variable is a (content, context) pair, so
the same content may legitimately take different values in different
contexts.  Mixing the variants' point masses yields an ordinary system whose
contextuality can then be analyzed.

liar_system(n) is the ring of Liar sentences: content q_i asserts q_{i+1} in
contexts 1..n-1 and the last context denies the loop closure (q_n and q_1
must differ), so no globally consistent truth assignment exists even though
every single context is satisfiable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coupling import configured_atom_cap
from .errors import CapExceeded, DomainMismatch, EmptyVariantSet, NotBinary
from .systems import MINUS, PLUS, System, validate_system

EQUAL = "equal"
UNEQUAL = "unequal"
ALLOWED = "allowed"


@dataclass(frozen=True)
class ContextConstraint:
    """Admissibility rule for one context's joint outcomes.

    kind 'equal'/'unequal' applies to two binary '+1'/'-1' variables; kind
    'allowed' lists the admissible outcome tuples explicitly (any arity).
    """

    kind: str
    allowed: tuple[tuple[str, ...], ...] | None = None

    @staticmethod
    def equal() -> "ContextConstraint":
        return ContextConstraint(kind=EQUAL)

    @staticmethod
    def unequal() -> "ContextConstraint":
        return ContextConstraint(kind=UNEQUAL)

    @staticmethod
    def explicit(tuples) -> "ContextConstraint":
        return ContextConstraint(
            kind=ALLOWED, allowed=tuple(tuple(t) for t in tuples)
        )


@dataclass(frozen=True)
class EpistemicContext:
    context: str
    contents: tuple[str, ...]
    constraint: ContextConstraint


@dataclass(frozen=True)
class EpistemicSpec:
    """Contents registry plus constrained contexts; validated on build."""

    outcomes: dict[str, tuple[str, ...]]
    contexts: tuple[EpistemicContext, ...]


@dataclass(frozen=True)
class DeterministicVariant:
    """One admissible outcome per (content, context) variable."""

    assignment: dict[tuple[str, str], str]


def _admissible(spec: EpistemicSpec, ctx: EpistemicContext):
    """Admissible outcome tuples of one context, in canonical product order."""
    domains = [spec.outcomes[q] for q in ctx.contents]
    kind = ctx.constraint.kind
    if kind in (EQUAL, UNEQUAL):
        if len(ctx.contents) != 2:
            raise DomainMismatch(
                f"context {ctx.context!r}: '{kind}' needs exactly 2 contents"
            )
        for q in ctx.contents:
            if set(spec.outcomes[q]) != {PLUS, MINUS}:
                raise NotBinary(
                    f"context {ctx.context!r}: '{kind}' needs '+1'/'-1' outcomes"
                )
        if kind == EQUAL:
            keep = lambda t: t[0] == t[1]
        else:
            keep = lambda t: t[0] != t[1]
    elif kind == ALLOWED:
        allowed = ctx.constraint.allowed or ()
        for t in allowed:
            if len(t) != len(ctx.contents):
                raise DomainMismatch(
                    f"context {ctx.context!r}: allowed tuple {t} has wrong arity"
                )
            for q, o in zip(ctx.contents, t):
                if o not in spec.outcomes[q]:
                    raise DomainMismatch(
                        f"context {ctx.context!r}: outcome {o!r} not in the "
                        f"outcome set of {q!r}"
                    )
        allowed_set = set(allowed)
        keep = lambda t: t in allowed_set
    else:
        raise DomainMismatch(f"unknown constraint kind {kind!r}")
    return [t for t in itertools.product(*domains) if keep(t)]


def enumerate_variants(
    spec: EpistemicSpec, cap: int | None = None
) -> list[DeterministicVariant]:
    """All deterministic variants satisfying every context's constraint.

    The assignment space (product of all variables' outcome set sizes) must
    stay within the cap; raises CapExceeded otherwise and EmptyVariantSet
    when some context admits no tuple at all.  Contexts are independent
    (variables are per-context), so the variants are exactly the product of
    the per-context admissible tuples, enumerated in canonical order.
    """
    if cap is None:
        cap = configured_atom_cap()
    space = 1
    for ctx in spec.contexts:
        for q in ctx.contents:
            space *= len(spec.outcomes[q])
    if space > cap:
        raise CapExceeded(space, cap)

    ordered = sorted(spec.contexts, key=lambda ctx: ctx.context)
    per_context = []
    for ctx in ordered:
        tuples = _admissible(spec, ctx)
        if not tuples:
            raise EmptyVariantSet(
                f"context {ctx.context!r} admits no outcome tuple"
            )
        per_context.append(tuples)

    variants = []
    for combo in itertools.product(*per_context):
        assignment: dict[tuple[str, str], str] = {}
        for ctx, cell in zip(ordered, combo):
            for q, o in zip(ctx.contents, cell):
                assignment[(q, ctx.context)] = o
        variants.append(DeterministicVariant(assignment=assignment))
    return variants


def uniform_mixture(
    spec: EpistemicSpec,
    variants: Sequence[DeterministicVariant],
    weights: Sequence | None = None,
) -> System:
    """Mix variant point masses into an ordinary system.

    Every context's table is the weighted average of the variants' fixed
    outcome tuples; weights default to uniform and must sum to exactly 1.
    The spec supplies structure (outcome sets, context content order) that
    the variants alone cannot.
    """
    if not variants:
        raise EmptyVariantSet("cannot mix an empty variant list")
    if weights is None:
        w = Fraction(1, len(variants))
        weights = [w] * len(variants)
    else:
        weights = [Fraction(x) for x in weights]
        if len(weights) != len(variants):
            raise DomainMismatch("one weight per variant required")
        if any(x < 0 for x in weights):
            raise DomainMismatch("weights must be nonnegative")
        if sum(weights) != 1:
            raise DomainMismatch(f"weights sum to {sum(weights)}, expected 1")

    needed = {
        (q, ctx.context) for ctx in spec.contexts for q in ctx.contents
    }
    for i, variant in enumerate(variants):
        if needed - set(variant.assignment):
            raise DomainMismatch(f"variant {i} does not cover every variable")

    blocks = []
    for ctx in spec.contexts:
        table: dict[tuple[str, ...], Fraction] = {}
        for variant, w in zip(variants, weights):
            cell = tuple(variant.assignment[(q, ctx.context)] for q in ctx.contents)
            table[cell] = table.get(cell, Fraction(0)) + w
        blocks.append((ctx.context, ctx.contents, table))
    return validate_system(spec.outcomes, blocks)


def liar_system(n: int) -> EpistemicSpec:
    """The rank-n Liar ring.

    Contents q1..qn over '+1'/'-1'; context i measures (q_i, q_{i+1}) and
    requires equality, except the last context, which measures (q_n, q_1)
    and requires inequality.  For n = 2 the context labels carry the
    direction of inference, since both contexts measure the same pair.
    """
    if n < 2:
        raise ValueError(f"liar system needs n >= 2, got {n}")
    qs = [f"q{i}" for i in range(1, n + 1)]
    outcomes = {q: (PLUS, MINUS) for q in qs}
    contexts = []
    for i in range(1, n + 1):
        a = qs[i - 1]
        b = qs[i % n]
        label = f"c{i}"
        if n == 2:
            label = f"c{i}:{a}->{b}"
        constraint = (
            ContextConstraint.unequal() if i == n else ContextConstraint.equal()
        )
        contexts.append(
            EpistemicContext(context=label, contents=(a, b), constraint=constraint)
        )
    return EpistemicSpec(outcomes=outcomes, contexts=tuple(contexts))
