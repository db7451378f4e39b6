"""Resolution-controlled modularity: evaluation and greedy agglomeration."""
import heapq
import logging
from typing import Iterable

import networkx as nx

from src.entities.architecture import Architecture
from src.entities.file_graph import FileGraph
from src.errors import PipelineError

logger = logging.getLogger(__name__)


def modularity(fg: FileGraph, partition: Architecture, gamma: float = 1.0) -> float:
    """Q_gamma on the symmetrized weighted graph."""
    if fg.total_weight <= 0:
        raise PipelineError("CLUSTER", "empty graph has no modularity")
    nodes = set(fg.nodes)
    if not nodes <= partition.universe:
        raise PipelineError("CLUSTER", "partition does not cover every node of the graph")
    communities = [members & nodes for members in partition.groups if members & nodes]
    return float(nx.community.modularity(fg.to_networkx(), communities, weight="weight", resolution=gamma))


def greedy_modularity(fg: FileGraph, gamma: float = 1.0) -> Architecture:
    """Greedy agglomerative (CNM) maximization of Q_gamma.

    Starts from singletons and merges the pair with the largest positive gain until none is left.
    Communities are indexed by sorted file id and a merge keeps the smaller index, so equal gains
    resolve to the lexicographically smallest pair.
    """
    nodes = sorted(fg.nodes)
    if not nodes:
        return Architecture.from_clusters({})
    index = {node: i for i, node in enumerate(nodes)}
    members: dict[int, list[str]] = {i: [node] for i, node in enumerate(nodes)}

    undirected = fg.symmetrized()
    two_m = 2.0 * sum(undirected.values())
    if two_m <= 0:
        return Architecture.from_groups(members.values())

    a = [0.0] * len(nodes)
    e: dict[int, dict[int, float]] = {i: {} for i in members}
    for (u, v), weight in undirected.items():
        i, j = index[u], index[v]
        share = weight / two_m
        e[i][j] = e[i].get(j, 0.0) + share
        e[j][i] = e[j].get(i, 0.0) + share
        a[i] += share
        a[j] += share

    version = [0] * len(nodes)
    heap: list[tuple[float, int, int, int, int]] = []

    def push(i: int, j: int) -> None:
        if i > j:
            i, j = j, i
        gain = 2.0 * (e[i][j] - gamma * a[i] * a[j])
        heapq.heappush(heap, (-gain, i, j, version[i], version[j]))

    for i in e:
        for j in e[i]:
            if i < j:
                push(i, j)

    merges = 0
    while heap:
        neg_gain, i, j, vi, vj = heapq.heappop(heap)
        if i not in members or j not in members or version[i] != vi or version[j] != vj:
            continue
        if -neg_gain <= 0:
            break
        # merge j into i (i < j)
        members[i].extend(members.pop(j))
        for x, share in e.pop(j).items():
            if x == i:
                continue
            e[i][x] = e[i].get(x, 0.0) + share
            e[x][i] = e[x].get(i, 0.0) + share
            del e[x][j]
        e[i].pop(j, None)
        a[i] += a[j]
        version[i] += 1
        merges += 1
        for x in e[i]:
            push(i, x)

    logger.debug(f"[CLUSTER] {merges} merges at resolution {gamma}: {len(members)} communities")
    return Architecture.from_groups(members.values())


def singleton_partition(nodes: Iterable[str]) -> Architecture:
    return Architecture.from_groups([node] for node in nodes)
