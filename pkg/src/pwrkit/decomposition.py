"""Homogeneity decomposition: citing-pattern similarity and clustering.

A citation set is split by building the cosine similarity of citing columns,
thresholding it into a weighted undirected graph, and clustering that graph
with a deterministic two-phase modularity optimizer (local moving followed by
community aggregation).  Ego-style subsets defined by a citation threshold on
one target journal complement the clustering route.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .engine import SelfCitations
from .matrix import CitationMatrix, NodeSet, zero_diagonal

# Gains closer than this are treated as equal so float noise cannot flip
# deterministic tie-breaks.
_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric pairwise similarities in [0, 1] over labelled nodes."""

    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        vals = np.asarray(self.values, dtype=np.float64)
        n = len(self.labels)
        if vals.shape != (n, n):
            raise ValueError(f"similarity matrix must be {n}x{n}, got {vals.shape}")
        if not np.isfinite(vals).all():
            raise ValueError("similarities must be finite")
        if vals.size and (vals.min() < 0.0 or vals.max() > 1.0):
            raise ValueError("similarities must lie in [0, 1]")
        if not np.array_equal(vals, vals.T):
            raise ValueError("similarity matrix must be symmetric")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class UndirectedGraph:
    """Weighted undirected graph as an edge list with i < j and w > 0."""

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.labels)
        seen: set[tuple[int, int]] = set()
        normalized: list[tuple[int, int, float]] = []
        for i, j, w in self.edges:
            a, b, weight = int(i), int(j), float(w)
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for {n} nodes")
            if a == b:
                raise ValueError(f"self-loop on node {a} is not supported")
            if a > b:
                a, b = b, a
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            if weight <= 0.0 or not np.isfinite(weight):
                raise ValueError(f"edge ({a}, {b}) must have positive finite weight")
            seen.add((a, b))
            normalized.append((a, b, weight))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def total_weight(self) -> float:
        return float(sum(w for _i, _j, w in self.edges))


@dataclass(frozen=True)
class Partition:
    """Community id per node plus the modularity the partition achieved."""

    labels: tuple[str, ...]
    community_of: tuple[int, ...]
    q: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "community_of", tuple(int(c) for c in self.community_of))
        if len(self.community_of) != len(self.labels):
            raise ValueError("community assignment must cover every node")
        ids = sorted(set(self.community_of))
        if ids and ids != list(range(len(ids))):
            raise ValueError("community ids must be contiguous from 0")

    @property
    def n_communities(self) -> int:
        return len(set(self.community_of))

    def communities(self) -> tuple[tuple[int, ...], ...]:
        groups: dict[int, list[int]] = {}
        for node, comm in enumerate(self.community_of):
            groups.setdefault(comm, []).append(node)
        return tuple(tuple(groups[c]) for c in sorted(groups))


def citing_cosine_matrix(
    z: CitationMatrix, diagonal_policy: SelfCitations | str = SelfCitations.INCLUDE
) -> SimilarityMatrix:
    """Cosine similarity between citing columns of the matrix.

    All-zero columns have no direction, so their similarity to anything,
    including themselves, is defined as 0.
    """
    policy = SelfCitations(diagonal_policy)
    mat = zero_diagonal(z) if policy is SelfCitations.EXCLUDE else z
    dense = mat.to_dense()
    norms = np.sqrt((dense * dense).sum(axis=0))
    gram = dense.T @ dense
    denom = np.outer(norms, norms)
    sims = np.divide(
        gram, denom, out=np.zeros_like(gram), where=denom > 0.0
    )
    np.clip(sims, 0.0, 1.0, out=sims)
    # Mirror the upper triangle so the result is exactly symmetric despite
    # float summation order differences.
    upper = np.triu(sims, k=1)
    diag = np.where(norms > 0.0, 1.0, 0.0)
    return SimilarityMatrix(z.labels, upper + upper.T + np.diag(diag))


def threshold_graph(similarities: SimilarityMatrix, tau: float) -> UndirectedGraph:
    """Keep an edge {i, j} wherever similarity strictly exceeds tau."""
    if tau < 0.0:
        raise ValueError(f"threshold must be >= 0, got {tau}")
    vals = similarities.values
    edges = [
        (i, j, float(vals[i, j]))
        for i in range(similarities.n)
        for j in range(i + 1, similarities.n)
        if vals[i, j] > tau
    ]
    return UndirectedGraph(similarities.labels, tuple(edges))


def modularity(
    graph: UndirectedGraph,
    partition: Partition | Mapping[int, int] | Sequence[int],
    resolution: float = 1.0,
) -> float:
    """Weighted Newman-Girvan modularity of a node-to-community assignment."""
    assignment = _assignment_vector(graph.n, partition)
    m = graph.total_weight
    if m == 0.0:
        raise ValueError("modularity is undefined for a graph with no edges")
    internal: dict[int, float] = {}
    degree = [0.0] * graph.n
    for i, j, w in graph.edges:
        degree[i] += w
        degree[j] += w
        if assignment[i] == assignment[j]:
            internal[assignment[i]] = internal.get(assignment[i], 0.0) + w
    totals: dict[int, float] = {}
    for node, comm in enumerate(assignment):
        totals[comm] = totals.get(comm, 0.0) + degree[node]
    two_m = 2.0 * m
    q = 0.0
    for comm, total in totals.items():
        q += internal.get(comm, 0.0) / m - resolution * (total / two_m) ** 2
    return q


def _assignment_vector(
    n: int, partition: Partition | Mapping[int, int] | Sequence[int]
) -> list[int]:
    if isinstance(partition, Partition):
        assignment = list(partition.community_of)
    elif isinstance(partition, Mapping):
        try:
            assignment = [int(partition[i]) for i in range(n)]
        except KeyError as exc:
            raise ValueError(f"partition is missing node {exc.args[0]}") from None
    else:
        assignment = [int(c) for c in partition]
    if len(assignment) != n:
        raise ValueError(f"partition covers {len(assignment)} nodes, graph has {n}")
    return assignment


def louvain_partition(
    graph: UndirectedGraph,
    resolution: float = 1.0,
    sweep_order: Sequence[int] | None = None,
) -> Partition:
    """Deterministic two-phase modularity clustering.

    Local moving visits nodes in ascending weighted-degree order (node index
    breaks degree ties); a node joins the neighbouring community with the
    largest insertion gain, where exact gain ties, including ties with its
    current community, go to the lowest community id.  Converged levels are
    aggregated into super-nodes and the process repeats until no move is
    left.  Final community ids are renumbered by their smallest original
    node.  An explicit ``sweep_order`` permutation overrides the visit order
    for the first level only.

    An edgeless graph has nothing to cluster and yields singletons with
    q = 0.0.
    """
    n = graph.n
    if n < 1:
        raise ValueError("graph must have at least one node")
    if graph.total_weight == 0.0:
        return Partition(graph.labels, tuple(range(n)), 0.0)
    if sweep_order is not None:
        order = [int(v) for v in sweep_order]
        if sorted(order) != list(range(n)):
            raise ValueError("sweep order must be a permutation of all nodes")

    adjacency: list[dict[int, float]] = [{} for _ in range(n)]
    loops = [0.0] * n
    for i, j, w in graph.edges:
        adjacency[i][j] = adjacency[i].get(j, 0.0) + w
        adjacency[j][i] = adjacency[j].get(i, 0.0) + w
    m = graph.total_weight

    assignment = list(range(n))
    members: list[list[int]] = [[v] for v in range(n)]
    first_level = True

    while True:
        level_n = len(adjacency)
        weighted_degree = [
            2.0 * loops[v] + sum(adjacency[v].values()) for v in range(level_n)
        ]
        if first_level and sweep_order is not None:
            sweep = list(order)
        else:
            sweep = sorted(range(level_n), key=lambda v: (weighted_degree[v], v))
        first_level = False

        community = list(range(level_n))
        sigma = weighted_degree.copy()
        moved_any = False
        moved = True
        # Real inputs settle in a handful of sweeps; the budget only guards
        # against float near-ties cycling forever.
        sweeps_left = 100 + 10 * level_n
        while moved and sweeps_left > 0:
            sweeps_left -= 1
            moved = False
            for v in sweep:
                current = community[v]
                weight_to: dict[int, float] = {}
                for u, w in adjacency[v].items():
                    weight_to[community[u]] = weight_to.get(community[u], 0.0) + w
                sigma[current] -= weighted_degree[v]
                best_comm: int | None = None
                best_gain = 0.0
                for cand in sorted(set(weight_to) | {current}):
                    gain = (
                        weight_to.get(cand, 0.0) / m
                        - resolution * sigma[cand] * weighted_degree[v] / (2.0 * m * m)
                    )
                    if best_comm is None or gain > best_gain + _GAIN_EPS:
                        best_comm = cand
                        best_gain = gain
                community[v] = best_comm
                sigma[best_comm] += weighted_degree[v]
                if best_comm != current:
                    moved = True
                    moved_any = True
        if not moved_any:
            break

        # Aggregation: communities become super-nodes, renumbered so that the
        # community holding the smallest original node gets the smallest id.
        groups: dict[int, list[int]] = {}
        for v in range(level_n):
            groups.setdefault(community[v], []).append(v)
        ordered = sorted(groups, key=lambda c: min(min(members[v]) for v in groups[c]))
        new_id = {c: idx for idx, c in enumerate(ordered)}
        new_members: list[list[int]] = [[] for _ in ordered]
        for c, nodes in groups.items():
            for v in nodes:
                new_members[new_id[c]].extend(members[v])
        for group in new_members:
            group.sort()
        for idx, group in enumerate(new_members):
            for original in group:
                assignment[original] = idx

        new_n = len(ordered)
        new_adjacency: list[dict[int, float]] = [{} for _ in range(new_n)]
        new_loops = [0.0] * new_n
        for v in range(level_n):
            cv = new_id[community[v]]
            new_loops[cv] += loops[v]
            for u, w in adjacency[v].items():
                cu = new_id[community[u]]
                if cu == cv:
                    if u > v:
                        new_loops[cv] += w
                else:
                    new_adjacency[cv][cu] = new_adjacency[cv].get(cu, 0.0) + w
        adjacency = new_adjacency
        loops = new_loops
        members = new_members

    q = modularity(graph, assignment, resolution)
    return Partition(graph.labels, tuple(assignment), q)


def citing_threshold_subset(
    z: CitationMatrix, target: str, min_count: float
) -> NodeSet:
    """Journals citing the target at least min_count times, target included
    when its self-citations qualify."""
    row_idx = z.index_of(target)
    if z.is_sparse:
        row = z.entries[[row_idx]].toarray().ravel()
    else:
        row = np.asarray(z.entries[row_idx])
    qualifying = tuple(int(j) for j in np.nonzero(row >= float(min_count))[0])
    return NodeSet(z.labels, qualifying)


def union_subset(a: NodeSet, b: NodeSet) -> NodeSet:
    """Ordered union of two subsets of the same parent matrix."""
    if a.parent_labels != b.parent_labels:
        raise ValueError("node sets belong to different matrices")
    merged = dict.fromkeys(a.indices)
    merged.update(dict.fromkeys(b.indices))
    return NodeSet(a.parent_labels, tuple(merged))
