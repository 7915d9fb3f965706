"""Constructors for the specialized set systems the assigner is used on.

All constructors emit only nonempty members (the empty set enters the
analysis through projections anyway) and use a deterministic enumeration
order, so repeated calls build identical systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .core import SetSystem
from .errors import EmptyUniverseError


@dataclass(frozen=True, slots=True)
class Interval:
    """Contiguous index range [lo, hi], both ends inclusive."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True, slots=True)
class Tree:
    """Connected acyclic graph; the edge list keeps its input order."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 1:
            raise ValueError("a tree needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
        # n-1 edges + connectivity together imply acyclicity.
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        if not all(seen):
            raise ValueError("edge list does not connect all vertices")

    def to_json_dict(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Tree":
        return cls(data["n"], tuple((u, v) for u, v in data["edges"]))


def _element_names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(count)]


def interval_family(n: int) -> SetSystem:
    """All n(n+1)/2 contiguous index ranges of a ground set of size n.

    Enumerated by lower end, then upper end.
    """
    if n < 1:
        raise EmptyUniverseError("interval family needs a ground set of size at least 1")
    members = [range(lo, hi + 1) for lo in range(n) for hi in range(lo, n)]
    return SetSystem(_element_names("x", n), members)


def disjoint_pair_union_family(n: int, include_singles: bool = False) -> SetSystem:
    """Unions of two disjoint intervals over a ground set of size n.

    Adjacent intervals are allowed; their union collapses to a single
    interval and is deduplicated against any other pair producing the same
    set.  With ``include_singles`` the individual intervals are members too.
    """
    if n < 1:
        raise EmptyUniverseError("interval-pair family needs a ground set of size at least 1")
    intervals = [Interval(lo, hi) for lo in range(n) for hi in range(lo, n)]
    members: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()

    def add(candidate: frozenset[int]) -> None:
        if candidate not in seen:
            seen.add(candidate)
            members.append(candidate)

    if include_singles:
        for a in intervals:
            add(frozenset(a.indices()))
    for a in intervals:
        for b in intervals:
            if a.hi < b.lo:
                add(frozenset(a.indices()) | frozenset(b.indices()))
    return SetSystem(_element_names("x", n), members)


def bounded_subset_family(universe_size: int, k: int) -> SetSystem:
    """All nonempty subsets of cardinality at most k, smallest sizes first.

    Within each size, subsets come in lexicographic index order.
    """
    if universe_size < 1:
        raise EmptyUniverseError("bounded-subset family needs a ground set of size at least 1")
    if k < 1:
        raise ValueError(f"maximum member size must be at least 1, got {k}")
    members: list[tuple[int, ...]] = []
    for size in range(1, min(k, universe_size) + 1):
        members.extend(combinations(range(universe_size), size))
    return SetSystem(_element_names("x", universe_size), members)


def _paths_from(tree: Tree, source: int, adjacency: list[list[tuple[int, int]]]) -> list[int | None]:
    """Parent edge index per vertex on the unique path back to ``source``."""
    parent_edge: list[int | None] = [None] * tree.vertex_count
    seen = [False] * tree.vertex_count
    seen[source] = True
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, edge_idx in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                parent_edge[v] = edge_idx
                queue.append(v)
    return parent_edge


def tree_path_family(tree: Tree) -> SetSystem:
    """Edge sets of all simple paths between distinct vertex pairs.

    The ground set is the tree's edges in input order; the family is ordered
    by endpoint pair (u, v) with u < v.  Endpoint pairs determine paths
    uniquely, so no deduplication is ever needed.  A single-vertex tree
    yields an empty family.
    """
    n = tree.vertex_count
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for edge_idx, (u, v) in enumerate(tree.edges):
        adjacency[u].append((v, edge_idx))
        adjacency[v].append((u, edge_idx))

    edge_other: list[dict[int, int]] = [dict() for _ in range(len(tree.edges))]
    for edge_idx, (u, v) in enumerate(tree.edges):
        edge_other[edge_idx] = {u: v, v: u}

    members: list[list[int]] = []
    for u in range(n):
        parent_edge = _paths_from(tree, u, adjacency)
        for v in range(u + 1, n):
            path: list[int] = []
            cur = v
            while cur != u:
                edge_idx = parent_edge[cur]
                assert edge_idx is not None
                path.append(edge_idx)
                cur = edge_other[edge_idx][cur]
            members.append(path)
    return SetSystem(_element_names("e", len(tree.edges)), members)
