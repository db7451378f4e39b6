import json

import pytest

from src.entities.model import EntityKind
from src.entities.text import SourceKind, WordOccurrence
from src.errors import InputError, SchemaError
from src.ingest.dependencies import adapt_depends_output, parse_dependency_json
from src.ingest.folders import scan_folders
from src.ingest.text_extraction import extract_text, preprocess_words, write_skip_report
from src.utils import tokenize_identifier

TOKENIZE_CASES = [
    ("plotFigure", ["plot", "figure"]),
    ("XML_parser2Impl", ["xml", "parser", "impl"]),
    ("x", ["x"]),
    ("HTTPServer-config", ["http", "server", "config"]),
    ("__init__", ["init"]),
    ("", []),
]

PREPROCESS_CASES = [
    ("the", None),
    ("parsers", "parser"),
    ("int", None),
    ("x", None),
    ("format", "format"),
]


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_parse_dependency_json(tmp_path):
    path = write_json(tmp_path / "deps.json", {
        "entities": [
            {"id": "a.c", "kind": "File", "name": "a.c", "file": "a.c", "parent": None},
            {"id": "a.c::main", "kind": "Function", "name": "main", "file": "a.c", "parent": None},
        ],
        "edges": [{"src": "a.c::main", "dst": "a.c", "type": "Call", "count": 1}],
    })
    g = parse_dependency_json(path)
    assert len(g.entities) == 2
    assert len(g.edges) == 1


def test_parse_empty_graph(tmp_path):
    g = parse_dependency_json(write_json(tmp_path / "deps.json", {"entities": [], "edges": []}))
    assert g.entities == () and g.edges == ()


def test_parse_rejects_dangling_edge(tmp_path):
    path = write_json(tmp_path / "deps.json", {
        "entities": [{"id": "a.c", "kind": "File", "name": "a.c", "file": "a.c"}],
        "edges": [{"src": "a.c", "dst": "ghost", "type": "Call", "count": 1}],
    })
    with pytest.raises(SchemaError) as error:
        parse_dependency_json(path)
    assert any("ghost" in issue for issue in error.value.issues)


def test_parse_reports_json_line(tmp_path):
    path = tmp_path / "deps.json"
    path.write_text('{\n  "entities": [\n  oops\n]}', encoding="utf-8")
    with pytest.raises(InputError, match="line 3"):
        parse_dependency_json(path)


def test_parse_synthesizes_missing_files(tmp_path):
    path = write_json(tmp_path / "deps.json", {
        "entities": [{"id": "lib/x.c::f", "kind": "Function", "name": "f", "file": "lib/x.c"}],
        "edges": [],
    })
    g = parse_dependency_json(path)
    assert g.file_ids == ("lib/x.c",)
    assert g.entity("lib/x.c").name == "x.c"


DEPENDS_CASES = [
    {"cells": [{"src": 0, "dest": 1, "values": {"Call": 2}}], "edges": [("Call", 2)]},
    {"cells": [{"src": 0, "dest": 1, "values": {"Call": 1, "Use": 3}}], "edges": [("Call", 1), ("Use", 3)]},
    {"cells": [], "edges": []},
]


def test_adapt_depends_output(tmp_path):
    for case in DEPENDS_CASES:
        path = write_json(tmp_path / "depends.json", {
            "variables": ["src/a.c", "src/b.c", "src/c.c"],
            "cells": case["cells"],
        })
        g = adapt_depends_output(path)
        assert len(g.entities) == 3
        assert sorted((e.dep_type, e.multiplicity) for e in g.edges) == case["edges"]


def test_adapt_depends_names_unknown_types(tmp_path):
    path = write_json(tmp_path / "depends.json", {
        "variables": ["a.c", "b.c"],
        "cells": [{"src": 0, "dest": 1, "values": {"Call": 1, "Teleport": 1}}],
    })
    with pytest.raises(SchemaError, match="Teleport"):
        adapt_depends_output(path)


def test_adapt_depends_member_variables(tmp_path):
    path = write_json(tmp_path / "depends.json", {
        "variables": ["a.c::parse (Function)", "a.c::Node (Struct)", "b.c::buffer"],
        "cells": [{"src": 0, "dest": 2, "values": {"Use": 1.0}}],
    })
    g = adapt_depends_output(path)
    kinds = {e.id: e.kind for e in g.entities}
    assert kinds["a.c::parse"] is EntityKind.FUNCTION
    assert kinds["a.c::Node"] is EntityKind.CLASS
    assert kinds["b.c::buffer"] is EntityKind.OTHER
    assert set(g.file_ids) == {"a.c", "b.c"}


def test_tokenize_identifier_cases():
    for name, expected in TOKENIZE_CASES:
        assert tokenize_identifier(name) == expected, name


def test_tokenize_identifier_is_idempotent():
    for name, _ in TOKENIZE_CASES:
        for word in tokenize_identifier(name):
            assert tokenize_identifier(word) == [word]


def test_preprocess_words_cases():
    for word, expected in PREPROCESS_CASES:
        occs = preprocess_words([WordOccurrence("a.c", None, SourceKind.COMMENT, word)])
        assert [o.word for o in occs] == ([] if expected is None else [expected]), word


def test_preprocess_merges_and_honours_extra_stop_words():
    occs = [
        WordOccurrence("a.c", None, SourceKind.COMMENT, "parsers", 2),
        WordOccurrence("a.c", None, SourceKind.COMMENT, "parser", 1),
        WordOccurrence("a.c", None, SourceKind.COMMENT, "widget", 1),
    ]
    out = preprocess_words(occs, extra_stop_words={"widget"})
    assert [(o.word, o.count) for o in out] == [("parser", 3)]


def graph_for(tmp_path, files, functions=()):
    entities = [{"id": f, "kind": "File", "name": f, "file": f} for f in files]
    entities += [{"id": f"{f}::{n}", "kind": "Function", "name": n, "file": f} for f, n in functions]
    return parse_dependency_json(write_json(tmp_path / "deps.json", {"entities": entities, "edges": []}))


def test_extract_text_filename_and_comment(tmp_path):
    (tmp_path / "trio.c").write_text("/* trio format */\n", encoding="utf-8")
    occs = extract_text(tmp_path, graph_for(tmp_path, ["trio.c"]))
    found = {(o.source_kind, o.word) for o in occs}
    assert found == {
        (SourceKind.FILENAME, "trio"),
        (SourceKind.COMMENT, "trio"),
        (SourceKind.COMMENT, "format"),
    }


def test_extract_text_definitions_are_split(tmp_path):
    (tmp_path / "plot.c").write_text("void plotFigure(int width) { draw(width); }\n", encoding="utf-8")
    occs = extract_text(tmp_path, graph_for(tmp_path, ["plot.c"], [("plot.c", "plotFigure")]))
    definitions = sorted(o.word for o in occs if o.source_kind is SourceKind.DEFINITION)
    assert definitions == ["figure", "plot"]
    assert all(o.entity_id == "plot.c::plotFigure" for o in occs if o.source_kind is SourceKind.DEFINITION)
    assert not any(o.word in ("draw", "width") for o in occs)


def test_extract_text_ignores_commented_definitions(tmp_path):
    (tmp_path / "m.py").write_text("# helperRoutine is gone\nx = 1\n", encoding="utf-8")
    occs = extract_text(tmp_path, graph_for(tmp_path, ["m.py"], [("m.py", "helperRoutine")]))
    assert not any(o.source_kind is SourceKind.DEFINITION for o in occs)
    assert {o.word for o in occs if o.source_kind is SourceKind.COMMENT} == {"helper", "routine", "is", "gone"}


def test_extract_text_skips_unreadable_files(tmp_path):
    (tmp_path / "ok.c").write_text("// fine\n", encoding="utf-8")
    g = graph_for(tmp_path, ["ok.c", "missing.c"])
    skipped = []
    occs = extract_text(tmp_path, g, skipped)
    assert [s[0] for s in skipped] == ["missing.c"]
    assert {o.file_id for o in occs} == {"ok.c"}
    write_skip_report(skipped, tmp_path / "skipped.txt")
    assert (tmp_path / "skipped.txt").read_text().startswith("SKIP missing.c ")


def test_extract_text_is_deterministic(tmp_path):
    (tmp_path / "a.c").write_text("/* beta alpha */ int gammaDelta;\n", encoding="utf-8")
    g = graph_for(tmp_path, ["a.c"], [("a.c", "gammaDelta")])
    assert extract_text(tmp_path, g) == extract_text(tmp_path, g)


SCAN_CASES = [
    {"files": ["a/x.c", "a/y.c", "b/z.c"], "folders": {"": 0, "a": 2, "b": 1}},
    {"files": ["x.c", "y.c"], "folders": {"": 2}},
    {"files": ["a/b/c/x.c"], "folders": {"": 0, "a": 0, "a/b": 0, "a/b/c": 1}},
]


def test_scan_folders_cases():
    for case in SCAN_CASES:
        tree = scan_folders(None, case["files"])
        assert {p: len(f.files) for p, f in tree.folders.items()} == case["folders"], case
        assert tree.files == frozenset(case["files"])
