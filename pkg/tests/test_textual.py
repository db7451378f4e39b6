import math

import numpy as np
import pytest

from src.entities.model import DependencyGraph, Entity, EntityKind
from src.entities.text import SourceKind, SourceKindWeights, TopicEmbedding, WordOccurrence
from src.errors import PipelineError
from src.textual.correlation import TopicCorrelations, topic_correlation
from src.textual.lda import embed_corpus, pseudo_counts, topic_embedding, train_lda
from src.textual.tfidf import tf_idf, weigh_words, weighted_documents


def occ(file_id, word, count=1, kind=SourceKind.COMMENT, entity_id=None):
    return WordOccurrence(file_id, entity_id, kind, word, count)


TF_IDF_CASES = [
    {"occs": [occ("a.c", "tree"), occ("b.c", "tree")], "expected": {("a.c", "tree"): 0.0, ("b.c", "tree"): 0.0}},
    {"occs": [occ("a.c", "tree"), occ("b.c", "leaf")], "expected": {("a.c", "tree"): math.log(2), ("b.c", "leaf"): math.log(2)}},
    {
        "occs": [occ("a.c", "tree", 3), occ("a.c", "leaf"), occ("b.c", "leaf")],
        "expected": {("a.c", "tree"): 0.75 * math.log(2), ("a.c", "leaf"): 0.0, ("b.c", "leaf"): 0.0},
    },
]


def test_tf_idf_cases():
    for case in TF_IDF_CASES:
        assert tf_idf(case["occs"]) == pytest.approx(case["expected"]), case


def test_tf_idf_decreases_with_document_frequency():
    common = [occ(f"{i}.c", "shared") for i in range(3)] + [occ(f"{i}.c", f"own{i}") for i in range(6)]
    values = tf_idf(common)
    assert values[("0.c", "shared")] < values[("0.c", "own0")]


def ranked_graph():
    return DependencyGraph((
        Entity("a.c", EntityKind.FILE, "a.c", "a.c", importance=1.0),
        Entity("a.c::top", EntityKind.FUNCTION, "top", "a.c", importance=0.8),
        Entity("a.c::low", EntityKind.FUNCTION, "low", "a.c", importance=0.2),
        Entity("b.c", EntityKind.FILE, "b.c", "b.c", importance=0.0),
        Entity("b.c::zero", EntityKind.FUNCTION, "zero", "b.c", importance=0.0),
    ))


def test_weigh_words_product():
    occs = [
        occ("a.c", "tree", 1, SourceKind.COMMENT),
        occ("a.c", "tree", 1, SourceKind.DEFINITION, "a.c::top"),
        occ("a.c", "tree", 1, SourceKind.DEFINITION, "a.c::low"),
        occ("a.c", "tree", 1, SourceKind.FILENAME),
        occ("b.c", "leaf", 1, SourceKind.DEFINITION, "b.c::zero"),
        occ("b.c", "root", 1, SourceKind.COMMENT),
        occ("b.c", "root", 1, SourceKind.COMMENT),
    ]
    weighted = weigh_words(occs, SourceKindWeights(), ranked_graph())
    tree = math.log(2)
    root = (2 / 3) * math.log(2)
    leaf = (1 / 3) * math.log(2)
    expected = [1.0 * tree, 2.0 * tree, 2.0 * 0.25 * tree, 3.0 * tree, 2.0 * leaf, root, root]
    assert [o.weight for o in weighted] == pytest.approx(expected)


def test_weigh_words_zero_tfidf_gives_zero():
    occs = [occ("a.c", "tree", kind=SourceKind.FILENAME), occ("b.c", "tree", kind=SourceKind.FILENAME)]
    assert [o.weight for o in weigh_words(occs, SourceKindWeights(), ranked_graph())] == [0.0, 0.0]


def test_weighted_documents_sum_per_file():
    occs = weigh_words([occ("a.c", "tree"), occ("a.c", "tree", kind=SourceKind.FILENAME), occ("b.c", "leaf")],
                       SourceKindWeights(), ranked_graph())
    docs = weighted_documents(occs)
    assert docs["a.c"]["tree"] == pytest.approx(4.0 * math.log(2))
    assert list(docs) == ["a.c", "b.c"]


def test_pseudo_counts_quantize_relative_weights():
    counts = pseudo_counts({"a": {"x": 2.0, "y": 1.0, "z": 0.001}, "b": {}}, quantum=0.1)
    assert counts == {"a": {"x": 10, "y": 5}, "b": {}}


def test_lda_single_topic():
    model = train_lda({"a.c": {"tree": 1.0, "leaf": 0.5}}, k=1, seed=1, iterations=5)
    assert topic_embedding(model, "a.c").distribution == (1.0,)


DISJOINT_DOCS = {
    "parse.c": {"token": 1.0, "lexer": 1.0, "grammar": 1.0, "syntax": 1.0},
    "net.c": {"socket": 1.0, "packet": 1.0, "router": 1.0, "protocol": 1.0},
}


def test_lda_separates_disjoint_vocabularies():
    model = train_lda(DISJOINT_DOCS, k=2, seed=42, iterations=100, alpha=0.1, passes=100)
    parse, net = model.distribution("parse.c"), model.distribution("net.c")
    assert int(np.argmax(parse)) != int(np.argmax(net))


def test_lda_is_deterministic():
    first = train_lda(DISJOINT_DOCS, k=3, seed=5, iterations=20)
    second = train_lda(DISJOINT_DOCS, k=3, seed=5, iterations=20)
    assert np.array_equal(first.doc_topic, second.doc_topic)
    assert np.array_equal(first.topic_word, second.topic_word)


def test_lda_empty_documents():
    model = train_lda({**DISJOINT_DOCS, "empty.c": {}}, k=4, seed=1, iterations=10)
    assert topic_embedding(model, "empty.c").distribution == pytest.approx((0.25,) * 4)
    for embedding in embed_corpus(model):
        assert embedding.k == 4
        assert sum(embedding.distribution) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(PipelineError):
        topic_embedding(model, "missing.c")
    with pytest.raises(PipelineError, match="empty"):
        train_lda({"a.c": {}, "b.c": {}}, k=2, seed=1, iterations=10)


def emb(*values, file_id="f"):
    return TopicEmbedding(file_id, tuple(values))


CORRELATION_CASES = [
    {"a": (0.7, 0.2, 0.1), "b": (0.7, 0.2, 0.1), "expected": 1.0},
    {"a": (0.9, 0.1), "b": (0.1, 0.9), "expected": -1.0},
    {"a": (0.5, 0.5), "b": (0.9, 0.1), "expected": 0.0},
]


def test_topic_correlation_cases():
    for case in CORRELATION_CASES:
        a, b = emb(*case["a"]), emb(*case["b"])
        assert topic_correlation(a, b) == pytest.approx(case["expected"]), case
        assert topic_correlation(b, a) == pytest.approx(case["expected"]), case


def test_topic_correlation_length_mismatch():
    with pytest.raises(PipelineError):
        topic_correlation(emb(0.5, 0.5), emb(0.2, 0.3, 0.5))


def test_correlation_matrix_matches_pairwise():
    embeddings = [
        emb(0.6, 0.3, 0.1, file_id="c.c"),
        emb(0.1, 0.3, 0.6, file_id="a.c"),
        emb(1 / 3, 1 / 3, 1 / 3, file_id="b.c"),
    ]
    matrix = TopicCorrelations.from_embeddings(embeddings)
    assert matrix.files == ("a.c", "b.c", "c.c")
    by_file = {e.file_id: e for e in embeddings}
    for a in matrix.files:
        for b in matrix.files:
            assert matrix.get(a, b) == pytest.approx(topic_correlation(by_file[a], by_file[b]))
    assert matrix.get("a.c", "unknown.c") == 0.0
    assert matrix.pairs_above(0.5) == []
    assert list(matrix.between([("a.c", "c.c"), ("a.c", "unknown.c")])) == pytest.approx(
        [topic_correlation(by_file["a.c"], by_file["c.c"]), 0.0]
    )
    restored = TopicCorrelations.from_json_dict(matrix.to_json_dict())
    assert np.array_equal(restored.embeddings, matrix.embeddings)


def random_correlations(n, k=6, seed=0):
    rng = np.random.default_rng(seed)
    data = rng.dirichlet(np.full(k, 0.3), size=n)
    data[::7] = 1.0 / k
    return TopicCorrelations(tuple(f"f{i:03d}.c" for i in range(n)), data)


def test_pairs_above_do_not_depend_on_block_size():
    corr = random_correlations(90)
    expected = [
        (a, b) for i, a in enumerate(corr.files) for b in corr.files[i + 1:] if corr.get(a, b) > 0.6
    ]
    assert expected
    for block in (1, 7, 64, 512):
        assert corr.pairs_above(0.6, block=block) == expected, block


def test_condensed_distances_follow_scipy_order():
    corr = random_correlations(25, seed=3)
    dense = np.array([[corr.get(a, b) for b in corr.files] for a in corr.files])
    expected = np.clip(1.0 - dense[np.triu_indices(len(corr.files), k=1)], 0.0, 2.0)
    assert np.allclose(corr.condensed_distances(), expected, atol=1e-12)
    assert corr.embeddings.shape == (25, 6)
