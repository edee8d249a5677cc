"""Contextuality classification.

A system is contextual when its variables resist coupling: the least total
same-content mismatch achievable jointly (system_delta) exceeds the sum of
the per-pair minimums achievable in isolation (delta_sum).  The difference
cnt = system_delta - delta_sum is the degree of contextuality; it is zero or
positive for every system, and the verdict is exact because every quantity is
a rational computed without rounding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coupling import CouplingWitness, delta_pairs, system_delta
from .errors import NotDeterministic
from .systems import System, is_consistently_connected

__all__ = [
    "PairDelta",
    "AnalysisReport",
    "is_deterministic",
    "analyze",
    "analyze_deterministic",
]


@dataclass(frozen=True)
class PairDelta:
    content: str
    context_a: str
    context_b: str
    delta: Fraction


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the classification produced, exactly.

    delta_sum is the in-isolation baseline, system_delta the in-system
    minimum, cnt their difference; contextual means cnt > 0.  The witness is
    one optimal coupling (for a deterministic system, its unique coupling).
    """

    n_contents: int
    n_contexts: int
    n_variables: int
    pair_deltas: tuple[PairDelta, ...]
    delta_sum: Fraction
    system_delta: Fraction
    cnt: Fraction
    contextual: bool
    connection_consistent: dict[str, bool]
    consistent: bool
    deterministic: bool
    witness: CouplingWitness


def _counts(system: System) -> tuple[int, int, int]:
    return (
        len(system.content_ids),
        len(system.blocks),
        len(system.variables),
    )


def is_deterministic(system: System) -> bool:
    """True when every context distribution is a point mass."""
    return all(
        any(p == 1 for p in blk.table.values()) for blk in system.blocks
    )


def _fixed_values(system: System) -> dict[tuple[str, str], str]:
    """The fixed outcome of every variable of a deterministic system."""
    values: dict[tuple[str, str], str] = {}
    for blk in system.blocks:
        cell = next(c for c, p in blk.table.items() if p == 1)
        for q, o in zip(blk.contents, cell):
            values[(blk.context, q)] = o
    return values


def analyze_deterministic(system: System) -> AnalysisReport:
    """Fast path for deterministic systems, exact at any size.

    Each pair's delta is 1 if the two fixed values differ and 0 otherwise,
    and the unique coupling of the system (the fixed values, jointly) attains
    exactly that total, so system_delta == delta_sum and cnt == 0: a
    deterministic system is never contextual.
    """
    if not is_deterministic(system):
        raise NotDeterministic("some context distribution is not a point mass")
    values = _fixed_values(system)
    pairs = []
    total = Fraction(0)
    for q in system.content_ids:
        for ca, cb in itertools.combinations(system.contexts_of(q), 2):
            d = Fraction(0) if values[(ca, q)] == values[(cb, q)] else Fraction(1)
            pairs.append(PairDelta(q, ca, cb, d))
            total += d
    consistency = is_consistently_connected(system)
    atom = tuple(values[v] for v in system.variables)
    witness = CouplingWitness(
        variables=system.variables, weights=((atom, Fraction(1)),)
    )
    n_q, n_c, n_v = _counts(system)
    return AnalysisReport(
        n_contents=n_q,
        n_contexts=n_c,
        n_variables=n_v,
        pair_deltas=tuple(pairs),
        delta_sum=total,
        system_delta=total,
        cnt=Fraction(0),
        contextual=False,
        connection_consistent=consistency.per_connection,
        consistent=consistency.overall,
        deterministic=True,
        witness=witness,
    )


def analyze(
    system: System,
    *,
    atom_cap: int | None = None,
    deterministic_fast_path: bool = True,
) -> AnalysisReport:
    """Classify a system as contextual or noncontextual.

    Deterministic systems take the closed-form path unless
    deterministic_fast_path is False (useful to cross-check the LP against
    it).  Everything else builds and solves the coupling LP exactly.
    """
    if deterministic_fast_path and is_deterministic(system):
        return analyze_deterministic(system)

    raw_pairs = delta_pairs(system)
    pairs = tuple(PairDelta(q, ca, cb, d) for q, ca, cb, d in raw_pairs)
    delta0 = sum((p.delta for p in pairs), Fraction(0))
    delta, witness = system_delta(system, atom_cap=atom_cap)
    cnt = delta - delta0
    assert cnt >= 0, "system coupling beat the isolated minimums"
    consistency = is_consistently_connected(system)
    n_q, n_c, n_v = _counts(system)
    return AnalysisReport(
        n_contents=n_q,
        n_contexts=n_c,
        n_variables=n_v,
        pair_deltas=pairs,
        delta_sum=delta0,
        system_delta=delta,
        cnt=cnt,
        contextual=cnt > 0,
        connection_consistent=consistency.per_connection,
        consistent=consistency.overall,
        deterministic=is_deterministic(system),
        witness=witness,
    )
