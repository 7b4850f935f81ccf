"""Functional-graph structure of a finite self-map.

Every atom has out-degree one, so the graph is a union of "rho" shapes:
trees hanging off disjoint cycles.  The tail height (longest distance
from any atom into the cycle set) is an independent oracle for both
stabilization indices of the induced operator.
"""
from __future__ import annotations

import random
from collections import deque

from .measure_space import DiscreteMeasureSpace, Transformation, new_map, new_space


def cycle_nodes(tau: Transformation) -> frozenset[str]:
    """Atoms lying on a cycle, found by peeling in-degree-zero nodes."""
    indegree = {p: 0 for p in tau.space.points}
    for p in tau.space.points:
        indegree[tau(p)] += 1
    queue = deque(p for p in tau.space.points if indegree[p] == 0)
    removed: set[str] = set()
    while queue:
        p = queue.popleft()
        removed.add(p)
        succ = tau(p)
        indegree[succ] -= 1
        if indegree[succ] == 0 and succ not in removed:
            queue.append(succ)
    return frozenset(p for p in tau.space.points if p not in removed)


def tail_height(tau: Transformation) -> int:
    """Maximum distance from an atom to the cycle set (cycle atoms are at 0).

    Breadth-first search from all cycle nodes along reversed edges; kept
    independent of any matrix computation so it can arbitrate disputes.
    """
    cycles = cycle_nodes(tau)
    reverse: dict[str, list[str]] = {p: [] for p in tau.space.points}
    for p in tau.space.points:
        reverse[tau(p)].append(p)
    dist = {p: 0 for p in cycles}
    queue = deque(cycles)
    height = 0
    while queue:
        p = queue.popleft()
        for q in reverse[p]:
            if q not in dist:
                dist[q] = dist[p] + 1
                height = max(height, dist[q])
                queue.append(q)
    return height


def counting_space(n: int) -> DiscreteMeasureSpace:
    """Atoms "1".."n" with unit weights."""
    points = [str(i) for i in range(1, n + 1)]
    return new_space(points, [1] * n)


def random_transformation(n: int, rng: random.Random) -> Transformation:
    """Uniform independent image per atom, on the counting space."""
    space = counting_space(n)
    assignment = {p: space.points[rng.randrange(n)] for p in space.points}
    return new_map(space, assignment)


def random_permutation_map(n: int, rng: random.Random) -> Transformation:
    space = counting_space(n)
    targets = list(space.points)
    rng.shuffle(targets)
    assignment = dict(zip(space.points, targets))
    return new_map(space, assignment)
