from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Optional


class EntityKind(str, Enum):
    FILE = "File"
    CLASS = "Class"
    FUNCTION = "Function"
    VARIABLE = "Variable"
    OTHER = "Other"


# The 13 relation types reported by the Depends extractor.
DEPENDENCY_TYPES: tuple[str, ...] = (
    "Implement", "Throw", "Call", "Create", "ImplLink", "Extend", "Use",
    "Parameter", "Import", "Cast", "Return", "Contain", "MixIn",
)


@dataclass(frozen=True)
class Entity:
    id: str
    kind: EntityKind
    name: str
    file_id: str
    parent_id: Optional[str] = None
    importance: Optional[float] = None

    @property
    def owner_id(self) -> Optional[str]:
        """Enclosing entity; top-level entities are owned by their file."""
        if self.kind is EntityKind.FILE:
            return None
        return self.parent_id if self.parent_id is not None else self.file_id


@dataclass(frozen=True)
class DependencyEdge:
    src: str
    dst: str
    dep_type: str
    multiplicity: int = 1
    weight: Optional[float] = None


@dataclass(frozen=True)
class DependencyGraph:
    entities: tuple[Entity, ...] = ()
    edges: tuple[DependencyEdge, ...] = ()

    @cached_property
    def entity_map(self) -> dict[str, Entity]:
        return {entity.id: entity for entity in self.entities}

    @cached_property
    def file_ids(self) -> tuple[str, ...]:
        return tuple(sorted(e.id for e in self.entities if e.kind is EntityKind.FILE))

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        """Direct members of every entity, keyed by owner id."""
        members: dict[str, list[str]] = {}
        for entity in self.entities:
            owner = entity.owner_id
            if owner is not None:
                members.setdefault(owner, []).append(entity.id)
        return {owner: tuple(ids) for owner, ids in members.items()}

    def entity(self, entity_id: str) -> Entity:
        return self.entity_map[entity_id]

    def with_entities(self, entities: Iterable[Entity]) -> "DependencyGraph":
        return replace(self, entities=tuple(entities))

    def with_edges(self, edges: Iterable[DependencyEdge]) -> "DependencyGraph":
        return replace(self, edges=tuple(edges))

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "entities": [
                {
                    "id": e.id,
                    "kind": e.kind.value,
                    "name": e.name,
                    "file": e.file_id,
                    "parent": e.parent_id,
                }
                for e in self.entities
            ],
            "edges": [
                {"src": d.src, "dst": d.dst, "type": d.dep_type, "count": d.multiplicity}
                for d in self.edges
            ],
        }


def validate_graph(g: DependencyGraph) -> list[str]:
    """Check every DependencyGraph invariant and return the violations found."""
    issues: list[str] = []

    seen: set[str] = set()
    for entity in g.entities:
        if entity.id in seen:
            issues.append(f"duplicate entity id '{entity.id}'")
        seen.add(entity.id)

    entities = g.entity_map
    for entity in g.entities:
        if entity.kind is EntityKind.FILE:
            if entity.file_id != entity.id:
                issues.append(f"file entity '{entity.id}' must be its own file (got '{entity.file_id}')")
        else:
            housing = entities.get(entity.file_id)
            if housing is None or housing.kind is not EntityKind.FILE:
                issues.append(f"entity '{entity.id}' has unresolved file '{entity.file_id}'")
        if entity.parent_id is not None and entity.parent_id not in entities:
            issues.append(f"entity '{entity.id}' has unresolved parent '{entity.parent_id}'")
        if entity.importance is not None and entity.importance < 0:
            issues.append(f"entity '{entity.id}' has negative importance {entity.importance}")

    issues.extend(_parent_chain_issues(g))

    for index, edge in enumerate(g.edges):
        for end in (edge.src, edge.dst):
            if end not in entities:
                issues.append(f"dangling endpoint: edge {index} references unknown entity '{end}'")
        if edge.dep_type not in DEPENDENCY_TYPES:
            issues.append(f"unknown dependency type '{edge.dep_type}' on edge {index}")
        if edge.multiplicity < 1:
            issues.append(f"edge {index} has multiplicity {edge.multiplicity} < 1")
        if edge.weight is not None and edge.weight < 0:
            issues.append(f"edge {index} has negative weight {edge.weight}")

    return issues


def _parent_chain_issues(g: DependencyGraph) -> list[str]:
    issues = []
    entities = g.entity_map
    for entity in g.entities:
        visited = {entity.id}
        current = entity
        while current.kind is not EntityKind.FILE:
            owner = entities.get(current.owner_id)
            if owner is None:
                break  # reported as unresolved above
            if owner.id in visited:
                issues.append(f"parent chain of '{entity.id}' contains a cycle")
                break
            visited.add(owner.id)
            current = owner
    return issues
