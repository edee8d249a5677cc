"""Minimal couplings, in isolation and within a whole system.

Content-sharing variables live in different contexts and therefore have no
joint distribution.  A coupling supplies one: jointly distributed stand-ins
whose per-context restrictions reproduce the observed tables.  Two questions
drive the analysis:

* isolation: for one pair of marginals, how small can Pr[X' != Y'] get over
  all couplings of just that pair?  (Closed form: the total variation
  distance; |u - v| for binary marginals.)
* in-system: over couplings of the entire system at once, how small can the
  *total* same-content mismatch get?  That is a linear program over the
  probabilities of global outcome assignments ("atoms").

The gap between the in-system minimum and the sum of isolated minimums is the
degree of contextuality.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import simplex
from .errors import AtomCapExceeded, DomainMismatch, NotBinary
from .systems import MINUS, PLUS, Marginal, System

DEFAULT_ATOM_CAP = 2**20
ATOM_CAP_ENV = "CBD_ATOM_CAP"


def configured_atom_cap() -> int:
    """Default atom cap, honoring the CBD_ATOM_CAP environment override."""
    raw = os.environ.get(ATOM_CAP_ENV)
    if raw is None:
        return DEFAULT_ATOM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ATOM_CAP_ENV} must be an integer, got {raw!r}")
    if cap < 1:
        raise ValueError(f"{ATOM_CAP_ENV} must be positive, got {cap}")
    return cap


def isolated_delta(m1: Marginal, m2: Marginal) -> Fraction:
    """Smallest Pr[X' != Y'] over all couplings of the two marginals.

    Equals the total variation distance (1/2) * sum_o |m1(o) - m2(o)|; for
    binary marginals that is |u - v| with u, v the '+1' probabilities.
    """
    if m1.content != m2.content or set(m1.probs) != set(m2.probs):
        raise DomainMismatch(
            f"cannot couple {m1.content!r}@{m1.context!r} with "
            f"{m2.content!r}@{m2.context!r}: different contents or outcome sets"
        )
    diff = sum(abs(m1.probs[o] - m2.probs[o]) for o in m1.probs)
    return diff / 2


@dataclass(frozen=True)
class JointTable:
    """Joint distribution of a coupled pair, rows from the first marginal."""

    row_outcomes: tuple[str, ...]
    col_outcomes: tuple[str, ...]
    cells: dict[tuple[str, str], Fraction]

    def row_margin(self) -> dict[str, Fraction]:
        out = {o: Fraction(0) for o in self.row_outcomes}
        for (r, _), p in self.cells.items():
            out[r] += p
        return out

    def col_margin(self) -> dict[str, Fraction]:
        out = {o: Fraction(0) for o in self.col_outcomes}
        for (_, c), p in self.cells.items():
            out[c] += p
        return out

    def discrepancy(self) -> Fraction:
        """Pr[X' != Y'] under this table."""
        return sum(p for (r, c), p in self.cells.items() if r != c)


def min_coupling_pair(m1: Marginal, m2: Marginal) -> JointTable:
    """The minimal coupling of a binary pair: diagonal cells as large as the
    margins allow, so the off-diagonal mass is exactly |u - v|."""
    if m1.content != m2.content or set(m1.probs) != set(m2.probs):
        raise DomainMismatch(
            f"cannot couple marginals of {m1.content!r} and {m2.content!r}"
        )
    if set(m1.probs) != {PLUS, MINUS}:
        raise NotBinary(
            f"minimal-coupling table requires the binary '+1'/'-1' outcomes, "
            f"got {sorted(m1.probs)}"
        )
    u = m1.probs[PLUS]
    v = m2.probs[PLUS]
    lo = min(u, v)
    cells = {
        (PLUS, PLUS): lo,
        (PLUS, MINUS): u - lo,
        (MINUS, PLUS): v - lo,
        (MINUS, MINUS): min(1 - u, 1 - v),
    }
    return JointTable(
        row_outcomes=(PLUS, MINUS), col_outcomes=(PLUS, MINUS), cells=cells
    )


@dataclass(frozen=True)
class LPRow:
    """One equality: the atom weights listed in cols sum to rhs."""

    label: str
    cols: tuple[int, ...]
    rhs: Fraction


@dataclass(frozen=True)
class LPInstance:
    """The system-coupling linear program.

    variables: (context, content) pairs in canonical order; an atom assigns
    one outcome to each.  rows hold one equality per context cell plus the
    total-mass row; the objective counts, per atom, how many content-sharing
    pairs it assigns different outcomes.
    """

    variables: tuple[tuple[str, str], ...]
    atoms: tuple[tuple[str, ...], ...]
    rows: tuple[LPRow, ...]
    objective: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class LPSolution:
    """Solver result: exact optimum and the nonzero atom weights."""

    status: str
    optimum: Fraction | None
    weights: dict[int, Fraction]


def build_coupling_lp(system: System, atom_cap: int | None = None) -> LPInstance:
    """Construct the coupling LP for a validated system.

    One nonnegative unknown per atom (an outcome assignment to every variable
    of the system), one equality per (context, outcome tuple) cell including
    zero-probability cells, plus total mass 1.  Raises AtomCapExceeded before
    materializing anything larger than the cap.
    """
    if atom_cap is None:
        atom_cap = configured_atom_cap()
    variables = system.variables
    domains = [system.outcomes[q] for (_, q) in variables]
    required = 1
    for dom in domains:
        required *= len(dom)
    if required > atom_cap:
        raise AtomCapExceeded(required, atom_cap)

    var_index = {v: i for i, v in enumerate(variables)}
    atoms = tuple(itertools.product(*domains))

    rows: list[LPRow] = []
    for blk in system.blocks:
        positions = [var_index[(blk.context, q)] for q in blk.contents]
        groups: dict[tuple[str, ...], list[int]] = {
            cell: [] for cell in system.cells(blk.context)
        }
        for i, atom in enumerate(atoms):
            groups[tuple(atom[p] for p in positions)].append(i)
        for cell, cols in groups.items():
            label = f"{blk.context}[{','.join(cell)}]"
            rows.append(LPRow(label=label, cols=tuple(cols), rhs=blk.prob(cell)))
    rows.append(
        LPRow(label="mass", cols=tuple(range(len(atoms))), rhs=Fraction(1))
    )

    pairs: list[tuple[int, int]] = []
    for q in system.content_ids:
        ctxs = system.contexts_of(q)
        for ca, cb in itertools.combinations(ctxs, 2):
            pairs.append((var_index[(ca, q)], var_index[(cb, q)]))
    objective = tuple(
        sum(1 for i, j in pairs if atom[i] != atom[j]) for atom in atoms
    )
    return LPInstance(
        variables=variables,
        atoms=atoms,
        rows=tuple(rows),
        objective=objective,
        pairs=tuple(pairs),
    )


def solve_lp(lp: LPInstance) -> LPSolution:
    """Solve the coupling LP exactly.

    A zero-probability cell forces every atom it covers to weight zero (all
    coefficients are +1), so those columns are fixed before pivoting; the
    two-phase simplex then runs on the reduced instance.  The returned
    weights are a basic feasible solution of the full program.
    """
    n = len(lp.atoms)
    forced = [False] * n
    for row in lp.rows:
        if row.rhs == 0:
            for c in row.cols:
                forced[c] = True
    alive = [i for i in range(n) if not forced[i]]
    pos = {c: k for k, c in enumerate(alive)}

    dense_rows = []
    rhs = []
    for row in lp.rows:
        if row.rhs == 0:
            continue  # satisfied identically once its columns are fixed at 0
        vec = [Fraction(0)] * len(alive)
        live = 0
        for c in row.cols:
            if not forced[c]:
                vec[pos[c]] = Fraction(1)
                live += 1
        if live == 0:
            return LPSolution(status="infeasible", optimum=None, weights={})
        dense_rows.append(vec)
        rhs.append(row.rhs)
    costs = [Fraction(lp.objective[c]) for c in alive]

    status, optimum, x = simplex.solve_min(costs, dense_rows, rhs)
    if status != "optimal":
        return LPSolution(status=status, optimum=None, weights={})
    weights = {alive[k]: v for k, v in enumerate(x) if v != 0}
    return LPSolution(status="optimal", optimum=optimum, weights=weights)


def verify_solution(lp: LPInstance, sol: LPSolution) -> bool:
    """Exact recheck of a solution against the full instance: nonnegative
    weights, every equality met, and the objective equal to the optimum."""
    if sol.status != "optimal":
        return False
    if any(v < 0 for v in sol.weights.values()):
        return False
    for row in lp.rows:
        total = sum(sol.weights.get(c, Fraction(0)) for c in row.cols)
        if total != row.rhs:
            return False
    value = sum(
        lp.objective[c] * v for c, v in sol.weights.items()
    )
    return value == sol.optimum


@dataclass(frozen=True)
class CouplingWitness:
    """An optimal coupling: nonzero atom weights in canonical variable order."""

    variables: tuple[tuple[str, str], ...]
    weights: tuple[tuple[tuple[str, ...], Fraction], ...]


def system_delta(
    system: System, atom_cap: int | None = None
) -> tuple[Fraction, CouplingWitness]:
    """Least total same-content mismatch achievable by any system coupling.

    Returns the exact minimum and one witness coupling attaining it.
    """
    lp = build_coupling_lp(system, atom_cap=atom_cap)
    sol = solve_lp(lp)
    assert sol.status == "optimal", "coupling LP infeasible on a valid system"
    witness = CouplingWitness(
        variables=lp.variables,
        weights=tuple(
            (lp.atoms[i], w) for i, w in sorted(sol.weights.items())
        ),
    )
    return sol.optimum, witness


def delta_pairs(system: System) -> list[tuple[str, str, str, Fraction]]:
    """Isolated delta for every content-sharing pair.

    Returns (content, context_a, context_b, delta) tuples, contents sorted,
    contexts in sorted pair order; the same pair enumeration the LP objective
    uses, so summing gives the in-isolation baseline.
    """
    from .systems import marginal

    out = []
    for q in system.content_ids:
        ctxs = system.contexts_of(q)
        margs = {c: marginal(system, q, c) for c in ctxs}
        for ca, cb in itertools.combinations(ctxs, 2):
            out.append((q, ca, cb, isolated_delta(margs[ca], margs[cb])))
    return out
