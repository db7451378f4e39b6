from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional

UNASSIGNED = "UNASSIGNED"


@dataclass(frozen=True, eq=True)
class Architecture:
    """A total partition of a file universe into named, non-empty clusters."""

    clusters: Mapping[str, frozenset[str]]
    universe: frozenset[str]

    def __post_init__(self):
        total = 0
        for name, members in self.clusters.items():
            if not members:
                raise ValueError(f"cluster '{name}' is empty")
            total += len(members)
        covered = frozenset().union(*self.clusters.values()) if self.clusters else frozenset()
        if total != len(covered):
            raise ValueError("clusters overlap")
        if covered != self.universe:
            missing = sorted(self.universe - covered)[:5]
            extra = sorted(covered - self.universe)[:5]
            raise ValueError(f"clusters do not partition the universe (missing={missing}, extra={extra})")

    def __hash__(self):
        return hash((frozenset(self.clusters.items()), self.universe))

    @classmethod
    def from_clusters(
        cls, clusters: Mapping[str, Iterable[str]], universe: Optional[Iterable[str]] = None
    ) -> "Architecture":
        """Build from a name -> members mapping; files of `universe` left out go to UNASSIGNED."""
        frozen = {name: frozenset(members) for name, members in clusters.items() if members}
        covered = frozenset().union(*frozen.values()) if frozen else frozenset()
        if universe is None:
            return cls(frozen, covered)
        universe = frozenset(universe)
        leftover = universe - covered
        if leftover:
            frozen[UNASSIGNED] = frozen.get(UNASSIGNED, frozenset()) | leftover
        return cls(frozen, universe)

    @classmethod
    def from_labels(cls, labels: Mapping[str, Hashable]) -> "Architecture":
        grouped: dict[str, set[str]] = {}
        for file_id, label in labels.items():
            grouped.setdefault(str(label), set()).add(file_id)
        return cls.from_clusters(grouped)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[str]], prefix: str = "C") -> "Architecture":
        """Name anonymous groups C000, C001, ... in order of each group's smallest member."""
        ordered = sorted((sorted(g) for g in groups if g), key=lambda g: g[0])
        return cls.from_clusters({f"{prefix}{i:03d}": members for i, members in enumerate(ordered)})

    @property
    def names(self) -> list[str]:
        return sorted(self.clusters)

    @property
    def groups(self) -> list[frozenset[str]]:
        return [self.clusters[name] for name in self.names]

    def __len__(self) -> int:
        return len(self.clusters)

    def sizes(self) -> dict[str, int]:
        return {name: len(members) for name, members in self.clusters.items()}

    def cluster_of(self, file_id: str) -> str:
        for name, members in self.clusters.items():
            if file_id in members:
                return name
        raise KeyError(file_id)

    def labels(self) -> dict[str, str]:
        return {f: name for name, members in self.clusters.items() for f in members}

    def restrict(self, files: Iterable[str]) -> "Architecture":
        keep = frozenset(files) & self.universe
        return Architecture.from_clusters({n: m & keep for n, m in self.clusters.items()})

    def same_partition(self, other: "Architecture") -> bool:
        """True when both group the files identically, whatever the cluster names."""
        return self.universe == other.universe and set(self.clusters.values()) == set(other.clusters.values())

    # -- serialization ------------------------------------------------------

    def to_rsf(self) -> str:
        lines = sorted(f"contain {name} {f}\n" for name, members in self.clusters.items() for f in members)
        return "".join(lines)

    @classmethod
    def from_rsf(cls, text: str) -> "Architecture":
        grouped: dict[str, set[str]] = {}
        seen: set[str] = set()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(maxsplit=2)
            if len(parts) != 3 or parts[0] != "contain":
                raise ValueError(f"line {number}: expected 'contain <cluster> <file>', got '{line}'")
            _, name, file_id = parts
            if file_id in seen:
                raise ValueError(f"line {number}: file '{file_id}' assigned twice")
            seen.add(file_id)
            grouped.setdefault(name, set()).add(file_id)
        return cls.from_clusters(grouped)

    def to_json(self) -> str:
        payload = {"clusters": {name: sorted(self.clusters[name]) for name in self.names}}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Architecture":
        payload = json.loads(text)
        clusters = payload.get("clusters") if isinstance(payload, dict) else None
        if not isinstance(clusters, dict):
            raise ValueError("architecture JSON must hold a 'clusters' object")
        seen: set[str] = set()
        for name, members in clusters.items():
            for f in members:
                if f in seen:
                    raise ValueError(f"file '{f}' assigned twice")
                seen.add(f)
        return cls.from_clusters(clusters)
