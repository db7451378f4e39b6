import logging
import posixpath
import re
from pathlib import Path
from typing import Any, Union

from src.entities.model import (
    DEPENDENCY_TYPES,
    DependencyEdge,
    DependencyGraph,
    Entity,
    EntityKind,
    validate_graph,
)
from src.errors import SchemaError
from src.utils import load_json

logger = logging.getLogger(__name__)

# Depends-style variable: "<path>" or "<path>::<qualified name>" with an optional " (<Kind>)" suffix.
_VARIABLE = re.compile(r"^(?P<path>.+?)(?:::(?P<name>.+?))?(?:\s+\((?P<kind>[A-Za-z]+)\))?$")

_KIND_ALIASES = {
    "method": EntityKind.FUNCTION,
    "function": EntityKind.FUNCTION,
    "class": EntityKind.CLASS,
    "struct": EntityKind.CLASS,
    "interface": EntityKind.CLASS,
    "enum": EntityKind.CLASS,
    "variable": EntityKind.VARIABLE,
    "var": EntityKind.VARIABLE,
    "field": EntityKind.VARIABLE,
    "file": EntityKind.FILE,
    "other": EntityKind.OTHER,
}


def _file_entity(path: str) -> Entity:
    return Entity(id=path, kind=EntityKind.FILE, name=posixpath.basename(path), file_id=path)


def _with_missing_files(entities: list[Entity]) -> list[Entity]:
    known = {e.id for e in entities}
    synthesized = []
    for entity in entities:
        if entity.file_id not in known:
            synthesized.append(_file_entity(entity.file_id))
            known.add(entity.file_id)
    if synthesized:
        logger.debug(f"[INGEST] synthesized {len(synthesized)} file entities")
    return synthesized + entities


def _finalize(entities: list[Entity], edges: list[DependencyEdge], source: str) -> DependencyGraph:
    graph = DependencyGraph(tuple(_with_missing_files(entities)), tuple(edges))
    issues = validate_graph(graph)
    if issues:
        raise SchemaError(f"{source}: dependency graph violates its invariants", issues)
    logger.info(
        f"[INGEST] {source}: {len(graph.entities)} entities, {len(graph.edges)} edges, "
        f"{len(graph.file_ids)} files"
    )
    return graph


def graph_from_payload(payload: Any, source: str = "<memory>") -> DependencyGraph:
    """Build a graph from the canonical dependency JSON structure."""
    if not isinstance(payload, dict):
        raise SchemaError(f"{source}: top level must be an object", ["expected keys 'entities' and 'edges'"])

    issues: list[str] = []
    entities: list[Entity] = []
    for index, record in enumerate(payload.get("entities") or []):
        try:
            kind = EntityKind(record["kind"])
            file_id = record.get("file") or (record["id"] if kind is EntityKind.FILE else None)
            if file_id is None:
                raise KeyError("file")
            entities.append(
                Entity(
                    id=str(record["id"]),
                    kind=kind,
                    name=str(record.get("name") or posixpath.basename(str(record["id"]))),
                    file_id=str(file_id),
                    parent_id=record.get("parent"),
                )
            )
        except KeyError as e:
            issues.append(f"entities[{index}]: missing field {e}")
        except (TypeError, ValueError) as e:
            issues.append(f"entities[{index}]: {e}")

    edges: list[DependencyEdge] = []
    for index, record in enumerate(payload.get("edges") or []):
        try:
            count = record.get("count", 1)
            if not isinstance(count, int) or isinstance(count, bool):
                raise ValueError(f"count must be an integer, got {count!r}")
            edges.append(DependencyEdge(str(record["src"]), str(record["dst"]), str(record["type"]), count))
        except KeyError as e:
            issues.append(f"edges[{index}]: missing field {e}")
        except (TypeError, ValueError, AttributeError) as e:
            issues.append(f"edges[{index}]: {e}")

    if issues:
        raise SchemaError(f"{source}: malformed dependency records", issues)
    return _finalize(entities, edges, source)


def parse_dependency_json(path: Union[str, Path]) -> DependencyGraph:
    return graph_from_payload(load_json(path), source=str(path))


def _entity_from_variable(variable: str) -> Entity:
    match = _VARIABLE.match(variable.strip())
    path = match.group("path").replace("\\", "/")
    name = match.group("name")
    if name is None:
        return _file_entity(path)
    kind_label = (match.group("kind") or "other").lower()
    kind = _KIND_ALIASES.get(kind_label, EntityKind.OTHER)
    if kind is EntityKind.FILE:
        return _file_entity(path)
    return Entity(id=f"{path}::{name}", kind=kind, name=name, file_id=path)


def adapt_depends_output(path: Union[str, Path]) -> DependencyGraph:
    """Convert a Depends matrix export (variables + cells) into a DependencyGraph."""
    payload = load_json(path)
    if not isinstance(payload, dict) or not isinstance(payload.get("variables"), list):
        raise SchemaError(f"{path}: not a Depends export", ["expected a 'variables' list"])

    entities = [_entity_from_variable(str(v)) for v in payload["variables"]]
    unique: dict[str, Entity] = {}
    for entity in entities:
        unique.setdefault(entity.id, entity)

    issues: list[str] = []
    unknown_types: set[str] = set()
    edges: list[DependencyEdge] = []
    for index, cell in enumerate(payload.get("cells") or []):
        try:
            src = entities[int(cell["src"])].id
            dst = entities[int(cell["dest"])].id
        except (KeyError, IndexError, TypeError, ValueError) as e:
            issues.append(f"cells[{index}]: bad endpoint ({e})")
            continue
        for dep_type, value in sorted((cell.get("values") or {}).items()):
            if dep_type not in DEPENDENCY_TYPES:
                unknown_types.add(dep_type)
                continue
            count = round(float(value))
            if count < 1:
                issues.append(f"cells[{index}]: {dep_type} count {value} rounds below 1")
                continue
            edges.append(DependencyEdge(src, dst, dep_type, count))

    if unknown_types:
        issues.insert(0, f"unknown dependency types: {', '.join(sorted(unknown_types))}")
    if issues:
        raise SchemaError(f"{path}: cannot adapt Depends output", issues)
    return _finalize(list(unique.values()), edges, str(path))
