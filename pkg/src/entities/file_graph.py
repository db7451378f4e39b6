from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping

import networkx as nx


@dataclass(frozen=True)
class FileGraph:
    """Directed, weighted file-level dependency graph."""

    nodes: tuple[str, ...]
    edges: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        node_set = set(self.nodes)
        for (src, dst), weight in self.edges.items():
            if src == dst:
                raise ValueError(f"self-loop on '{src}'")
            if src not in node_set or dst not in node_set:
                raise ValueError(f"edge {src}->{dst} leaves the node set")
            if not math.isfinite(weight) or weight < 0:
                raise ValueError(f"edge {src}->{dst} has invalid weight {weight}")

    @classmethod
    def build(cls, nodes: Iterable[str], edges: Mapping[tuple[str, str], float]) -> "FileGraph":
        return cls(tuple(sorted(set(nodes))), dict(sorted(edges.items())))

    def weight(self, src: str, dst: str) -> float:
        return self.edges.get((src, dst), 0.0)

    def has_link(self, a: str, b: str) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    @property
    def total_weight(self) -> float:
        return sum(self.edges.values())

    def median_positive_weight(self) -> float:
        positive = [w for w in self.edges.values() if w > 0]
        return statistics.median(positive) if positive else 1.0

    def with_edges(self, edges: Mapping[tuple[str, str], float]) -> "FileGraph":
        return replace(self, edges=dict(sorted(edges.items())))

    def symmetrized(self) -> dict[tuple[str, str], float]:
        """Undirected weights (u < v) summing both directions."""
        undirected: dict[tuple[str, str], float] = {}
        for (src, dst), weight in self.edges.items():
            key = (src, dst) if src < dst else (dst, src)
            undirected[key] = undirected.get(key, 0.0) + weight
        return undirected

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_weighted_edges_from((u, v, w) for (u, v), w in self.symmetrized().items())
        return graph

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "nodes": list(self.nodes),
            "edges": [[src, dst, weight] for (src, dst), weight in self.edges.items()],
        }

    @classmethod
    def from_json_dict(cls, payload: Mapping[str, Any]) -> "FileGraph":
        return cls.build(payload["nodes"], {(s, d): float(w) for s, d, w in payload["edges"]})
