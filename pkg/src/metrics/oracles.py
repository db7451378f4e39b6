"""Exhaustive breadth-first oracles for small partitions."""
from collections import deque
from typing import Iterable, Iterator

from src.entities.architecture import Architecture
from src.errors import MetricError
from src.metrics.overlap import require_same_universe

ORACLE_LIMIT = 8

State = frozenset  # frozenset of frozensets


def iter_partitions(elements: Iterable) -> Iterator[list[list]]:
    """Every set partition of `elements` (Bell-number many)."""
    items = list(elements)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in iter_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1:]
        yield [[first]] + partial


def _state(arch: Architecture) -> State:
    return frozenset(arch.clusters.values())


def _moves(state: State) -> Iterator[State]:
    clusters = list(state)
    for source in clusters:
        for x in source:
            remainder = source - {x}
            base = state - {source}
            if remainder:
                base = base | {remainder}
                yield base | {frozenset({x})}
            for target in clusters:
                if target is source:
                    continue
                yield (base - {target}) | {target | {x}}


def _joins(state: State) -> Iterator[State]:
    clusters = sorted(state, key=sorted)
    for i, first in enumerate(clusters):
        for second in clusters[i + 1:]:
            yield (state - {first, second}) | {first | second}


def _search(a: Architecture, b: Architecture, allow_joins: bool) -> int:
    require_same_universe(a, b, "oracle")
    if len(a.universe) > ORACLE_LIMIT:
        raise MetricError("oracle limited to small instances")
    start, goal = _state(a), _state(b)
    distance = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            return distance[state]
        neighbours = list(_moves(state))
        if allow_joins:
            neighbours.extend(_joins(state))
        for nxt in neighbours:
            if nxt not in distance:
                distance[nxt] = distance[state] + 1
                queue.append(nxt)
    raise MetricError("target partition unreachable")


def oracle_mojo(a: Architecture, b: Architecture) -> int:
    """Fewest moves and joins turning A into B."""
    return _search(a, b, allow_joins=True)


def oracle_moves(a: Architecture, b: Architecture) -> int:
    """Fewest single-file moves turning A into B."""
    return _search(a, b, allow_joins=False)
