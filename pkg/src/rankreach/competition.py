"""Competitor detection, leadership groups, and finite-family value intervals.

All verdicts come from column and row comparisons of the fundamental
matrix; the certificate constructors then exhibit explicit personalization
vectors realizing each verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .localization import (
    FundamentalMatrix,
    RankContext,
    basis_family,
    basis_family_matrix,
)
from .stochastic import PageRankVector

# Comparisons of X entries closer than this are ties: they yield neither
# competitors nor leaders.  Being conservative never fabricates a verdict.
STRICT_MARGIN = 1e-9
EPSILON_FLOOR = 1e-12


@dataclass(frozen=True)
class CompetitionVerdict:
    """Whether nodes i and j can swap rank order, with witness rows."""

    i: int
    j: int
    competes: bool
    witness_k: int | None = None
    witness_l: int | None = None


@dataclass(frozen=True)
class LeadershipGroup:
    """Nodes that some personalization makes strictly top-ranked.

    ``witness_rows`` maps each leader to the first row of X where it is
    the strict row maximum.
    """

    leaders: frozenset[int]
    witness_rows: dict[int, int]


@dataclass(frozen=True)
class CompetitivityInterval:
    """Closed hull of node i's rank values over the n concentrated vectors."""

    node: int
    epsilon: float
    lo: float
    hi: float


@dataclass(frozen=True)
class WitnessCertificate:
    """Two rank vectors exhibiting both orderings of a competing pair."""

    epsilon: float
    rank_high: PageRankVector
    rank_low: PageRankVector


def effective_competitors(
    fm: FundamentalMatrix, i: int, j: int, margin: float = STRICT_MARGIN
) -> CompetitionVerdict:
    """Compare columns i and j of X; a sign change in the difference means
    the pair competes.  Witnesses are the first qualifying rows."""
    if i == j:
        raise DomainError("competitivity is defined for distinct nodes")
    for idx in (i, j):
        if not 0 <= idx < fm.n:
            raise DomainError(f"node index {idx} out of range")
    diff = fm.x[:, i] - fm.x[:, j]
    above = np.flatnonzero(diff > margin)
    below = np.flatnonzero(diff < -margin)
    if above.size and below.size:
        return CompetitionVerdict(
            i=i, j=j, competes=True,
            witness_k=int(above[0]), witness_l=int(below[0]),
        )
    return CompetitionVerdict(i=i, j=j, competes=False)


def competitivity_graph(
    fm: FundamentalMatrix, margin: float = STRICT_MARGIN
) -> set[tuple[int, int]]:
    """All competing pairs (i, j) with i < j."""
    pairs = set()
    for i in range(fm.n):
        for j in range(i + 1, fm.n):
            if effective_competitors(fm, i, j, margin=margin).competes:
                pairs.add((i, j))
    return pairs


def leadership_group(
    fm: FundamentalMatrix, margin: float = STRICT_MARGIN
) -> LeadershipGroup:
    """Union of strict row maxima of X; tied rows contribute no leader."""
    leaders: set[int] = set()
    witness: dict[int, int] = {}
    if fm.n == 1:
        return LeadershipGroup(leaders=frozenset({0}), witness_rows={0: 0})
    for row_idx in range(fm.n):
        row = fm.x[row_idx]
        order = np.argsort(row)
        top, second = int(order[-1]), int(order[-2])
        if row[top] - row[second] > margin:
            leaders.add(top)
            witness.setdefault(top, row_idx)
    return LeadershipGroup(leaders=frozenset(leaders), witness_rows=witness)


def competitivity_interval(
    ctx: RankContext, i: int, epsilon: float
) -> CompetitivityInterval:
    """Hull of node i's rank over all n epsilon-concentrated personalizations."""
    if ctx.n < 2:
        raise DomainError("competitivity interval needs at least 2 nodes")
    if not 0 <= i < ctx.n:
        raise DomainError(f"node index {i} out of range")
    vals = ctx.rank_weights(basis_family_matrix(epsilon, ctx.n))[i, :]
    return CompetitivityInterval(
        node=i, epsilon=epsilon, lo=float(vals.min()), hi=float(vals.max())
    )


def witness_epsilon(
    ctx: RankContext,
    verdict: CompetitionVerdict,
    floor: float = EPSILON_FLOOR,
) -> WitnessCertificate:
    """Halve epsilon from 1/2 until the two witness personalizations
    actually swap the rank order of the pair; returns both rank vectors."""
    if not verdict.competes:
        raise DomainError("certificate requires a competing pair")
    i, j = verdict.i, verdict.j
    epsilon = 0.5
    while epsilon >= floor:
        pair = np.column_stack(
            [
                basis_family(verdict.witness_k, epsilon, ctx.n).v.v,
                basis_family(verdict.witness_l, epsilon, ctx.n).v.v,
            ]
        )
        ranked = ctx.rank_weights(pair)
        high, low = ranked[:, 0], ranked[:, 1]
        if high[i] > high[j] and low[i] < low[j]:
            return WitnessCertificate(
                epsilon=epsilon,
                rank_high=PageRankVector(pi=high),
                rank_low=PageRankVector(pi=low),
            )
        epsilon *= 0.5
    raise NumericalError(
        f"no rank-swap certificate for pair ({i}, {j}) above epsilon "
        f"floor {floor:g}",
        details={"i": i, "j": j, "floor": floor},
    )


def leadership_certificate(
    ctx: RankContext, leader: int, witness_row: int, floor: float = EPSILON_FLOOR
) -> tuple[float, PageRankVector]:
    """Epsilon and rank vector making ``leader`` strictly top-ranked, found
    by halving from 1/2 with the personalization concentrated on the
    witness row."""
    epsilon = 0.5
    while epsilon >= floor:
        ranked = ctx.rank_weights(basis_family(witness_row, epsilon, ctx.n).v.v)
        top = ranked[leader]
        rest = np.delete(ranked, leader)
        if (top > rest).all():
            return epsilon, PageRankVector(pi=ranked)
        epsilon *= 0.5
    raise NumericalError(
        f"no leadership certificate for node {leader} from row {witness_row} "
        f"above epsilon floor {floor:g}",
        details={"leader": leader, "witness_row": witness_row, "floor": floor},
    )
