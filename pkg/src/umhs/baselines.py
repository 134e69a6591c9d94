"""Comparison rankers: degree, clique-graph eigenvector, Z- and H-tensor
eigenvector centralities, continuous Borgatti-Everett scores, and k-core
decomposition.

Each ranker maps a hypergraph to a total order over its nodes.  Ties are
always broken by ascending node index, so identical inputs give identical
rankings bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, clique_graph


@dataclass(frozen=True)
class IterationParams:
    """Fixed-point solver settings: L1 convergence tolerance and a cap."""

    tolerance: float = 1e-10
    max_iters: int = 10_000

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass(frozen=True)
class Ranking:
    """Scores per node plus the induced order, best first.

    converged/residual describe the fixed-point iteration when one was used;
    note carries method metadata such as the solver variant.
    """

    scores: tuple[float, ...]
    order: tuple[int, ...]
    converged: bool = True
    residual: float = 0.0
    note: str = ""

    def __post_init__(self) -> None:
        n = len(self.scores)
        if sorted(self.order) != list(range(n)):
            raise ValueError("order must be a permutation of all node indices")
        for a, b in zip(self.order, self.order[1:]):
            if self.scores[a] < self.scores[b] or (
                self.scores[a] == self.scores[b] and a > b
            ):
                raise ValueError("order inconsistent with scores and index tie-break")

    @classmethod
    def from_scores(
        cls,
        scores,
        converged: bool = True,
        residual: float = 0.0,
        note: str = "",
    ) -> "Ranking":
        values = tuple(float(s) for s in scores)
        order = tuple(sorted(range(len(values)), key=lambda v: (-values[v], v)))
        return cls(
            scores=values,
            order=order,
            converged=converged,
            residual=residual,
            note=note,
        )


def degree_ranking(G: Hypergraph) -> Ranking:
    """Rank by the number of hyperedges containing each node."""
    return Ranking.from_scores(G.degrees())


def _power_iteration(
    w: np.ndarray, it: IterationParams, norm_ord: int
) -> tuple[np.ndarray, bool, float]:
    """Dominant-eigenvector iteration for a nonnegative symmetric matrix.

    Iterates x <- (W x + x) / norm, the usual shift that defeats the sign
    oscillation on bipartite weight patterns without changing the leading
    eigenvector.  Returns the last iterate, a convergence flag, and the
    final L1 residual.
    """
    n = w.shape[0]
    x = np.full(n, 1.0 / n)
    residual = float("inf")
    for _ in range(it.max_iters):
        y = w @ x + x
        total = np.linalg.norm(y, ord=norm_ord)
        if total == 0.0:
            return x, True, 0.0
        y /= total
        residual = float(np.abs(y - x).sum())
        x = y
        if residual < it.tolerance:
            return x, True, residual
    return x, False, residual


def _components(G: Hypergraph) -> list[list[int]]:
    """Connected components of the co-occurrence structure, singletons included."""
    parent = list(range(G.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for edge in G.edges:
        root = find(edge[0])
        for v in edge[1:]:
            parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def clique_eigen_ranking(G: Hypergraph, it: IterationParams | None = None) -> Ranking:
    """Eigenvector centrality on the weighted clique graph.

    Each connected component is solved independently by L1-normalized power
    iteration, then scaled so its maximum score equals the component's share
    of the total edge weight; isolated nodes score 0.  An edgeless input
    yields uniform zero scores in index order.
    """
    it = it or IterationParams()
    w = clique_graph(G)
    total_weight = float(w.sum()) / 2.0
    scores = np.zeros(G.n)
    converged = True
    residual = 0.0
    if total_weight > 0:
        for comp in _components(G):
            if len(comp) < 2:
                continue
            idx = np.array(comp)
            sub = w[np.ix_(idx, idx)]
            comp_weight = float(sub.sum()) / 2.0
            if comp_weight == 0.0:
                continue
            x, ok, res = _power_iteration(sub, it, norm_ord=1)
            peak = float(x.max())
            share = comp_weight / total_weight
            scores[idx] = x * (share / peak)
            converged = converged and ok
            residual = max(residual, res)
    return Ranking.from_scores(scores, converged=converged, residual=residual)


def _uniform_rank(G: Hypergraph) -> int:
    if not G.edges:
        raise ValueError("tensor centralities need at least one hyperedge")
    r = len(G.edges[0])
    if any(len(e) != r for e in G.edges):
        raise ValueError("hypergraph is not uniform; extract an r-uniform part first")
    if r < 2:
        raise ValueError(f"uniformity must be >= 2, got {r}")
    return r


def _tensor_apply(G: Hypergraph, x: np.ndarray) -> np.ndarray:
    """f(x)_i = sum over edges containing i of the product of the other members."""
    f = np.zeros(G.n)
    for edge in G.edges:
        vals = [x[v] for v in edge]
        for pos, v in enumerate(edge):
            prod = 1.0
            for j, val in enumerate(vals):
                if j != pos:
                    prod *= val
            f[v] += prod
    return f


def z_eigen_ranking(G: Hypergraph, it: IterationParams | None = None) -> Ranking:
    """Z-eigenvector centrality of the adjacency tensor of an r-uniform input.

    Fixed point of x <- f(x)/||f(x)||_2 from a uniform positive start; the
    tensor's symmetrization constants scale f uniformly and drop out of the
    ranking.  Non-convergence within the iteration cap is reported on the
    result, with the last iterate returned.
    """
    it = it or IterationParams()
    if not G.edges:
        return Ranking.from_scores(
            np.zeros(G.n), note="z-eigenvector (edgeless input)"
        )
    _uniform_rank(G)
    x = np.full(G.n, 1.0 / max(G.n, 1))
    residual = float("inf")
    converged = False
    for _ in range(it.max_iters):
        f = _tensor_apply(G, x)
        nrm = float(np.linalg.norm(f, ord=2))
        if nrm == 0.0:
            x = f
            converged = True
            residual = 0.0
            break
        f /= nrm
        residual = float(np.abs(f - x).sum())
        x = f
        if residual < it.tolerance:
            converged = True
            break
    note = "z-eigenvector" if converged else "z-eigenvector (no convergence)"
    return Ranking.from_scores(x, converged=converged, residual=residual, note=note)


def h_eigen_ranking(G: Hypergraph, it: IterationParams | None = None) -> Ranking:
    """H-eigenvector centrality: x <- g(x)/||g(x)||_1 with g = f(x)^(1/(r-1)).

    Nodes in no hyperedge keep score 0; everything else follows the
    standard nonnegative-tensor power method.
    """
    it = it or IterationParams()
    if not G.edges:
        return Ranking.from_scores(
            np.zeros(G.n), note="h-eigenvector (edgeless input)"
        )
    r = _uniform_rank(G)
    x = np.full(G.n, 1.0 / max(G.n, 1))
    residual = float("inf")
    converged = False
    exponent = 1.0 / (r - 1)
    for _ in range(it.max_iters):
        g = _tensor_apply(G, x) ** exponent
        total = float(g.sum())
        if total == 0.0:
            x = g
            converged = True
            residual = 0.0
            break
        g /= total
        residual = float(np.abs(g - x).sum())
        x = g
        if residual < it.tolerance:
            converged = True
            break
    note = "h-eigenvector" if converged else "h-eigenvector (no convergence)"
    return Ranking.from_scores(x, converged=converged, residual=residual, note=note)


def borgatti_everett_ranking(
    G: Hypergraph, it: IterationParams | None = None
) -> Ranking:
    """Continuous core-periphery scores on the clique graph.

    The continuous model's stationary condition makes the score vector the
    dominant eigenvector of the weight matrix, here computed by power
    iteration and reported with unit L2 norm.  The discrete blockmodel
    variant is out of scope; the note labels the variant used.
    """
    it = it or IterationParams()
    w = clique_graph(G)
    note = "borgatti-everett continuous (dominant eigenvector)"
    if float(w.sum()) == 0.0:
        return Ranking.from_scores(np.zeros(G.n), note=note)
    x, converged, residual = _power_iteration(w, it, norm_ord=2)
    return Ranking.from_scores(
        x, converged=converged, residual=residual, note=note
    )


def kcore_ranking(G: Hypergraph) -> Ranking:
    """k-core decomposition under hypergraph degree.

    Peel a minimum-degree node each round (ties: lowest index); every edge
    containing a removed node disappears with it.  A node's core number is
    the largest minimum degree seen up to its removal.  Ranking: core number
    descending, then original degree descending, then index ascending.
    """
    degrees = list(G.degrees())
    original = G.degrees()
    alive_edge = [True] * len(G.edges)
    remaining = set(range(G.n))
    core = [0] * G.n
    threshold = 0
    while remaining:
        v = min(remaining, key=lambda u: (degrees[u], u))
        threshold = max(threshold, degrees[v])
        core[v] = threshold
        remaining.remove(v)
        for idx in G.incidence[v]:
            if alive_edge[idx]:
                alive_edge[idx] = False
                for u in G.edges[idx]:
                    if u in remaining:
                        degrees[u] -= 1
    span = max(original, default=0) + 1
    scores = [core[v] * span + original[v] for v in range(G.n)]
    return Ranking.from_scores(scores, note="k-core (peeling threshold)")
