"""Text file formats for hypergraphs and core sets.

A hypergraph file holds one hyperedge per line as whitespace-separated node
tokens; '#' lines and blank lines are ignored.  Tokens map to dense indices
in order of first appearance.  A core file lists core node tokens the same
way.  The formats carry edges only, so nodes that appear in no hyperedge do
not survive a write/read round trip; everything else does, index-identically
under the first-appearance order.
"""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import Iterable, Sequence

from .hypergraph import Hypergraph, HittingSet, canonicalize


def read_hypergraph(path: str | Path) -> tuple[Hypergraph, dict[str, int]]:
    """Parse a hyperedge-list file; returns the hypergraph and token->index map.

    Raises:
        ValueError: on a line with fewer than two distinct tokens, naming
            the line number.
    """
    labels: dict[str, int] = {}
    raw_edges: list[list[int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(set(tokens)) < 2:
                raise ValueError(
                    f"{path}: line {lineno}: edge needs >= 2 distinct nodes, "
                    f"got {tokens}"
                )
            for tok in tokens:
                if tok not in labels:
                    labels[tok] = len(labels)
            raw_edges.append([labels[tok] for tok in tokens])
    if not raw_edges:
        warnings.warn(f"{path}: no hyperedges found, empty hypergraph")
    return canonicalize(len(labels), raw_edges), labels


def read_core(path: str | Path, labels: dict[str, int]) -> HittingSet:
    """Parse a core file against an existing label map.

    Unknown tokens are warned about and dropped (a core node that appears in
    no hyperedge is invisible to the edge-list format).

    Raises:
        ValueError: when no known core node remains.
    """
    members: set[int] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            for tok in stripped.split():
                if tok in labels:
                    members.add(labels[tok])
                else:
                    warnings.warn(f"{path}: unknown core token {tok!r} dropped")
    if not members:
        raise ValueError(f"{path}: core file contains no known nodes")
    return frozenset(members)


def default_labels(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def write_hypergraph(
    graph: Hypergraph, path: str | Path, labels: Sequence[str] | None = None
) -> None:
    """Write one hyperedge per line using the given (or v0..vN) tokens."""
    tokens = list(labels) if labels is not None else default_labels(graph.n)
    if len(tokens) != graph.n:
        raise ValueError(f"need {graph.n} labels, got {len(tokens)}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for edge in graph.edges:
            fh.write(" ".join(tokens[v] for v in edge) + "\n")


def write_core(
    core: Iterable[int], path: str | Path, labels: Sequence[str] | None = None
) -> None:
    """Write core node tokens one per line, in ascending index order."""
    members = sorted(set(core))
    if labels is None:
        top = members[-1] + 1 if members else 0
        labels = default_labels(top)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for v in members:
            fh.write(f"{labels[v]}\n")
