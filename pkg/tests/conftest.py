"""Shared generators and definitional oracles for the test suite.

The oracles here recompute everything from the definitions (full projection
rebuild per step, exhaustive pairwise comparison) and deliberately share no
code with the library's incremental paths.
"""

from __future__ import annotations

import heapq
import random

from setsep import SetSystem, Tree


def random_set_system(rng: random.Random, max_n: int = 12, max_family: int = 200) -> SetSystem:
    n = rng.randint(1, max_n)
    fam_size = rng.randint(0, max_family)
    family = [rng.sample(range(n), rng.randint(0, n)) for _ in range(fam_size)]
    return SetSystem([f"x{j}" for j in range(n)], family)


def random_tree(rng: random.Random, n: int) -> Tree:
    """Uniform labeled tree from a random Pruefer sequence."""
    if n == 1:
        return Tree(1, ())
    if n == 2:
        return Tree(2, ((0, 1),))
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Tree(n, tuple(edges))


def greedy_by_definition(universe_n: int, family) -> tuple[int, ...]:
    """Literal greedy rule: rebuild projections and forbidden values per step."""
    members: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for m in family:
        f = frozenset(m)
        if f not in seen:
            seen.add(f)
            members.append(f)
    weights: list[int] = []
    for step in range(universe_n):
        projected = {frozenset()}
        for s in members:
            for j in range(step + 1):
                projected.add(frozenset(x for x in s if x < j))
        totals = [sum(weights[i] for i in p) for p in projected]
        forbidden = set(totals)
        for i, a in enumerate(totals):
            for b in totals[i + 1 :]:
                forbidden.add(abs(a - b))
        w = 1
        while w in forbidden:
            w += 1
        weights.append(w)
    return tuple(weights)


def collisions_by_definition(system: SetSystem, weights) -> list[tuple[int, int]]:
    """All colliding index pairs by exhaustive pairwise comparison, lex order."""
    totals = [sum(weights[i] for i in member) for member in system.family]
    out = []
    for i in range(len(totals)):
        for j in range(i + 1, len(totals)):
            if totals[i] == totals[j]:
                out.append((i, j))
    return out


def forbidden_by_definition(system: SetSystem, level: int, weights) -> set[int]:
    """Forbidden values at a level straight from the definition."""
    projected = {frozenset()}
    for s in system.family:
        for j in range(level + 1):
            projected.add(frozenset(x for x in s if x < j))
    totals = [sum(weights[i] for i in p) for p in projected]
    forbidden = set(totals)
    for i, a in enumerate(totals):
        for b in totals[i + 1 :]:
            forbidden.add(abs(a - b))
    return forbidden
