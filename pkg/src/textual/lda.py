import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence

import numpy as np
from gensim.models import LdaModel

from src.entities.text import TopicEmbedding
from src.errors import PipelineError

logger = logging.getLogger(__name__)


def pseudo_counts(docs: Mapping[str, Mapping[str, float]], quantum: float) -> dict[str, dict[str, int]]:
    """Scale weights so the corpus maximum is 1, then replicate each word round(w / quantum) times."""
    peak = max((w for bag in docs.values() for w in bag.values()), default=0.0)
    counts: dict[str, dict[str, int]] = {}
    for file_id, bag in docs.items():
        counts[file_id] = {}
        if peak <= 0:
            continue
        for word, weight in bag.items():
            n = int(round(weight / peak / quantum))
            if n > 0:
                counts[file_id][word] = n
    return counts


@dataclass(frozen=True, eq=False)
class TopicModel:
    """Per-file topic distributions; rows of empty documents are uniform."""

    files: tuple[str, ...]
    vocabulary: tuple[str, ...]
    doc_topic: np.ndarray
    topic_word: np.ndarray

    @property
    def k(self) -> int:
        return self.doc_topic.shape[1]

    @cached_property
    def index(self) -> dict[str, int]:
        return {f: i for i, f in enumerate(self.files)}

    def distribution(self, file_id: str) -> np.ndarray:
        if file_id not in self.index:
            raise PipelineError("TEXTUAL", f"file '{file_id}' was not in the topic-model corpus")
        return self.doc_topic[self.index[file_id]]


def train_lda(
    docs: Mapping[str, Mapping[str, float]],
    k: int,
    seed: int,
    iterations: int,
    alpha: Optional[float] = None,
    beta: float = 0.01,
    quantum: float = 0.02,
    passes: int = 5,
) -> TopicModel:
    """Train LDA on weighted bags of words; weights enter as quantized pseudo-counts.

    `iterations` bounds the per-document inference loop, `passes` counts sweeps over the corpus.
    """
    if k < 1:
        raise PipelineError("TEXTUAL", "topic count must be at least 1")
    alpha = 50.0 / k if alpha is None else alpha
    files = tuple(sorted(docs))
    counts = pseudo_counts(docs, quantum)
    vocabulary = tuple(sorted({w for bag in counts.values() for w in bag}))
    if not vocabulary:
        raise PipelineError("TEXTUAL", "every document is empty; nothing to model")
    word_index = {w: i for i, w in enumerate(vocabulary)}
    corpus = [sorted((word_index[w], n) for w, n in counts[f].items()) for f in files]

    logger.info(
        f"[TEXTUAL] LDA: {len(files)} documents, {len(vocabulary)} words, "
        f"{sum(n for bow in corpus for _, n in bow)} tokens, K={k}, {passes} passes"
    )
    model = LdaModel(
        corpus=corpus,
        id2word=dict(enumerate(vocabulary)),
        num_topics=k,
        alpha=np.full(k, alpha),
        eta=beta,
        passes=passes,
        iterations=iterations,
        chunksize=max(1, min(len(corpus), 2000)),
        eval_every=None,
        random_state=seed,
        dtype=np.float64,
    )

    gamma, _ = model.inference(corpus)
    doc_topic = gamma / gamma.sum(axis=1, keepdims=True)
    empty = np.array([not bow for bow in corpus])
    doc_topic[empty] = 1.0 / k
    return TopicModel(files, vocabulary, doc_topic, model.get_topics())


def topic_embedding(model: TopicModel, file_id: str) -> TopicEmbedding:
    return TopicEmbedding(file_id, tuple(float(x) for x in model.distribution(file_id)))


def embed_corpus(model: TopicModel, files: Optional[Sequence[str]] = None) -> list[TopicEmbedding]:
    return [topic_embedding(model, f) for f in (files if files is not None else model.files)]
