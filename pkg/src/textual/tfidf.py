import math
from collections import Counter, defaultdict
from dataclasses import replace
from typing import Iterable, List

from src.entities.model import DependencyGraph, EntityKind
from src.entities.text import SourceKindWeights, WordOccurrence
from src.errors import PipelineError


def tf_idf(occs: Iterable[WordOccurrence]) -> dict[tuple[str, str], float]:
    """tf = count / words in file, idf = ln(files / files containing the word)."""
    counts: dict[str, Counter] = defaultdict(Counter)
    for occ in occs:
        counts[occ.file_id][occ.word] += occ.count

    n_files = len(counts)
    document_frequency: Counter = Counter()
    for words in counts.values():
        document_frequency.update(words.keys())

    values = {}
    for file_id, words in counts.items():
        total = sum(words.values())
        for word, count in words.items():
            values[(file_id, word)] = (count / total) * math.log(n_files / document_frequency[word])
    return values


def importance_factors(g: DependencyGraph) -> dict[str, float]:
    """Each non-file entity's importance relative to the most important entity of its file."""
    peak: dict[str, float] = {}
    for entity in g.entities:
        if entity.kind is EntityKind.FILE:
            continue
        if entity.importance is None:
            raise PipelineError("TEXTUAL", f"importance not set on '{entity.id}'")
        peak[entity.file_id] = max(peak.get(entity.file_id, 0.0), entity.importance)

    factors = {}
    for entity in g.entities:
        if entity.kind is EntityKind.FILE:
            continue
        top = peak[entity.file_id]
        factors[entity.id] = entity.importance / top if top > 0 else 1.0
    return factors


def weigh_words(
    occs: Iterable[WordOccurrence], skw: SourceKindWeights, g: DependencyGraph
) -> List[WordOccurrence]:
    """weight = source-kind weight * entity importance factor * tf-idf"""
    occs = list(occs)
    values = tf_idf(occs)
    factors = importance_factors(g)
    return [
        replace(
            occ,
            weight=skw[occ.source_kind]
            * (factors.get(occ.entity_id, 1.0) if occ.entity_id is not None else 1.0)
            * values[(occ.file_id, occ.word)],
        )
        for occ in occs
    ]


def weighted_documents(occs: Iterable[WordOccurrence]) -> dict[str, dict[str, float]]:
    """Per-file bag of words with summed occurrence weights."""
    docs: dict[str, dict[str, float]] = defaultdict(dict)
    for occ in occs:
        if occ.weight is None:
            raise PipelineError("TEXTUAL", f"occurrence '{occ.word}' in {occ.file_id} is not weighted")
        bag = docs[occ.file_id]
        bag[occ.word] = bag.get(occ.word, 0.0) + occ.weight
    return {file_id: dict(sorted(bag.items())) for file_id, bag in sorted(docs.items())}
