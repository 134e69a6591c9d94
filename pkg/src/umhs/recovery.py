"""The recovery pipeline: greedy maximal-matching hitting set, randomized
union of minimal hitting sets (UMHS), and the member-first node ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .baselines import Ranking
from .hypergraph import (
    HittingSet,
    Hypergraph,
    is_hitting_set,
    is_minimal_hitting_set,
    prune_to_minimal,
)


@dataclass(frozen=True)
class UmhsConfig:
    """Union-of-minimal-hitting-sets settings.

    iterations is the number of randomized greedy+prune rounds.  The default
    leaves headroom over the ~50 rounds at which recovery typically levels
    off.  All randomness is derived from seed; record_trajectory keeps
    per-iteration union statistics for sweep plots.
    """

    iterations: int = 100
    seed: int = 0
    record_trajectory: bool = False

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class UmhsResult:
    """The accumulated union S' and, optionally, its growth per iteration.

    trajectory entries are (union size, union-core overlap); the overlap
    slot is None when no core was supplied.
    """

    union_set: HittingSet
    trajectory: tuple[tuple[int, int | None], ...] | None = None


def greedy_matching_certificate(
    G: Hypergraph, edge_order: Sequence[int]
) -> tuple[HittingSet, tuple[int, ...]]:
    """Greedy hitting set plus the indices of the edges it selected.

    Scans edges in edge_order; whenever an edge has no member in S yet, all
    its members join S.  The selected edges are pairwise disjoint and no
    edge avoids S, i.e. they form a maximal matching certifying
    |S| <= rank * k*.
    """
    order = [int(i) for i in edge_order]
    m = len(G.edges)
    visited = bytearray(m)
    for idx in order:
        if not 0 <= idx < m or visited[idx]:
            raise ValueError("edge_order must be a permutation of the edge indices")
        visited[idx] = 1
    if len(order) != m:
        raise ValueError("edge_order must be a permutation of the edge indices")

    in_s = bytearray(G.n)
    selected: list[int] = []
    for idx in order:
        edge = G.edges[idx]
        if not any(in_s[v] for v in edge):
            selected.append(idx)
            for v in edge:
                in_s[v] = 1
    result = frozenset(v for v in range(G.n) if in_s[v])
    if __debug__:
        assert is_hitting_set(G, result), "greedy output must hit every edge"
        taken: set[int] = set()
        for idx in selected:
            members = set(G.edges[idx])
            assert not taken & members, "selected edges must be pairwise disjoint"
            taken |= members
    return result, tuple(selected)


def greedy_matching(G: Hypergraph, edge_order: Sequence[int]) -> HittingSet:
    """Greedy maximal-matching hitting set over the given edge order."""
    return greedy_matching_certificate(G, edge_order)[0]


def umhs(
    G: Hypergraph,
    cfg: UmhsConfig,
    core: Iterable[int] | None = None,
) -> UmhsResult:
    """Union of minimal hitting sets from randomized greedy rounds.

    Iteration i draws its edge and node permutations from a stream keyed by
    (cfg.seed, i), so the result is identical however the iterations are
    scheduled; the union itself is commutative.  Each round's greedy output
    is pruned to a minimal hitting set before joining the union.
    """
    m = len(G.edges)
    union: set[int] = set()
    core_set = frozenset(core) if core is not None else None
    records: list[tuple[int, int | None]] = []
    for iteration in range(1, cfg.iterations + 1):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=cfg.seed, spawn_key=(iteration,))
        )
        edge_perm = rng.permutation(m)
        hit, _ = greedy_matching_certificate(G, edge_perm)
        removal = [v for v in rng.permutation(G.n).tolist() if v in hit]
        minimal = prune_to_minimal(G, hit, removal)
        if __debug__:
            assert is_minimal_hitting_set(G, minimal)
        union |= minimal
        if cfg.record_trajectory:
            overlap = len(union & core_set) if core_set is not None else None
            records.append((len(union), overlap))
    return UmhsResult(
        union_set=frozenset(union),
        trajectory=tuple(records) if cfg.record_trajectory else None,
    )


def rank_nodes(G: Hypergraph, members: Iterable[int]) -> Ranking:
    """Rank members of a recovered set ahead of everyone else.

    Within both blocks the order is degree descending with index tie-break.
    Scores encode (block, degree) on a single scale so that any top-k cut of
    the scores reproduces the order.
    """
    s = frozenset(members)
    bad = [v for v in s if not 0 <= v < G.n]
    if bad:
        raise ValueError(f"members outside node range: {sorted(bad)}")
    deg = G.degrees()
    span = max(deg, default=0) + 1
    scores = [(2 if v in s else 1) * span + deg[v] for v in range(G.n)]
    return Ranking.from_scores(scores, note="members first, degree within blocks")
