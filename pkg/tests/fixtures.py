"""Synthetic projects with planted structure, shared by the test modules."""
import json
import random
from pathlib import Path

import networkx as nx

from src.entities.architecture import Architecture
from src.entities.file_graph import FileGraph
from src.entities.model import DependencyEdge, DependencyGraph, Entity, EntityKind

MODULE_WORDS = {
    "parser": ["token", "lexer", "grammar", "syntax"],
    "network": ["socket", "packet", "router", "protocol"],
    "render": ["pixel", "shader", "texture", "canvas"],
}

GENERIC_WORDS = [
    "alpha", "gamma", "delta", "omega", "sigma", "kappa", "theta", "zeta",
    "iota", "rho", "phi", "chi", "psi", "tau", "mu", "nu", "xi", "pi",
]

# Planted projects used by the pipeline tests: (layout, vocabulary) -> expected fusion direction.
FUSION_DIRECTION_CASES = [
    {"name": "flat-distinct", "layout": "flat", "vocabulary": "distinct", "expected": "text"},
    {"name": "folders-generic", "layout": "folders", "vocabulary": "generic", "expected": "folder"},
]

FAST_TEXT_SETTINGS = {
    "lda.topics": 3,
    "lda.iterations": 60,
    "lda.alpha": 0.1,
    "lda.quantum": 0.05,
    "lda.passes": 50,
}


def camel(*words: str) -> str:
    return words[0] + "".join(w.capitalize() for w in words[1:])


def planted_project(root: Path, layout: str = "folders", vocabulary: str = "distinct", seed: int = 7) -> dict:
    """Three modules of four C files each, with dense intra-module calls.

    layout: "folders" puts each module in its own folder (a/, b/, c/), "flat" puts every file in the root.
    vocabulary: "distinct" gives each module its own words, "generic" draws words at random from a shared pool.
    """
    rng = random.Random(seed)
    source_root = root / "src"
    entities, edges, modules = [], [], {}

    for index, (module, words) in enumerate(MODULE_WORDS.items()):
        folder = "abc"[index] + "/" if layout == "folders" else ""
        files = []
        for j, word in enumerate(words):
            if vocabulary == "distinct":
                file_id = f"{folder}{module}_{word}.c"
                names = [camel(word, words[(j + 1) % 4]), camel(word, words[(j + 2) % 4])]
                comment = " ".join([module] + words)
            else:
                file_id = f"{folder}part{index * 4 + j}.c"
                picks = rng.sample(GENERIC_WORDS, 6)
                names = [camel(picks[0], picks[1]), camel(picks[2], picks[3])]
                comment = " ".join(picks[4:] + rng.sample(GENERIC_WORDS, 2))
            functions = [f"{file_id}::{name}" for name in names]
            variable = f"{file_id}::{camel(word if vocabulary == 'distinct' else 'shared', 'table')}"

            entities.append({"id": file_id, "kind": "File", "name": file_id.rsplit("/", 1)[-1], "file": file_id})
            for fid, name in zip(functions, names):
                entities.append({"id": fid, "kind": "Function", "name": name, "file": file_id, "parent": None})
            entities.append({"id": variable, "kind": "Variable", "name": variable.split("::")[1], "file": file_id})
            edges.append({"src": functions[0], "dst": functions[1], "type": "Call", "count": 1})
            edges.append({"src": functions[0], "dst": variable, "type": "Use", "count": 2})

            path = source_root / file_id
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(
                f"/* {comment} */\n"
                f"static int {variable.split('::')[1]};\n"
                f"int {names[1]}(void) {{ return 0; }}\n"
                f"int {names[0]}(void) {{ return {names[1]}(); }}\n",
                encoding="utf-8",
            )
            files.append((file_id, functions))
        modules[module] = [f for f, _ in files]

        for i, (_, caller) in enumerate(files):
            for j, (_, callee) in enumerate(files):
                if i != j:
                    edges.append({"src": caller[0], "dst": callee[1], "type": "Call", "count": 2})

    first = {m: [f for f in entities if f["kind"] == "Function" and f["file"] == files[0]][0]["id"]
             for m, files in modules.items()}
    names = list(modules)
    for i, module in enumerate(names):
        edges.append({"src": first[module], "dst": first[names[(i + 1) % 3]], "type": "Call", "count": 1})

    deps = root / "deps.json"
    deps.write_text(json.dumps({"entities": entities, "edges": edges}, indent=1), encoding="utf-8")
    return {"deps": deps, "source_root": source_root, "modules": Architecture.from_clusters(modules)}


def planted_corpus_graph(seed: int, n_modules: int = 3, files_per_module: int = 6) -> DependencyGraph:
    """Call edges stay inside planted modules, Use edges land on random files."""
    rng = random.Random(seed)
    entities, edges, functions, variables = [], [], {}, []
    for m in range(n_modules):
        for f in range(files_per_module):
            file_id = f"m{m}/f{f}.c"
            entities.append(Entity(file_id, EntityKind.FILE, f"f{f}.c", file_id))
            for k in range(2):
                fid = f"{file_id}::fn{k}"
                entities.append(Entity(fid, EntityKind.FUNCTION, f"fn{k}", file_id))
                functions.setdefault(m, []).append(fid)
            vid = f"{file_id}::var"
            entities.append(Entity(vid, EntityKind.VARIABLE, "var", file_id))
            variables.append(vid)

    all_functions = [fid for group in functions.values() for fid in group]
    for group in functions.values():
        for _ in range(len(group) * 2):
            src, dst = rng.sample(group, 2)
            edges.append(DependencyEdge(src, dst, "Call", 1))
    for _ in range(len(all_functions) * 2):
        edges.append(DependencyEdge(rng.choice(all_functions), rng.choice(variables), "Use", 1))
    return DependencyGraph(tuple(entities), tuple(edges))


def two_triangles() -> FileGraph:
    edges = {}
    for tri in (("a", "b", "c"), ("d", "e", "f")):
        for i in range(3):
            edges[(tri[i], tri[(i + 1) % 3])] = 1.0
    return FileGraph.build("abcdef", edges)


def random_modular_graph(seed: int = 3, modules: int = 6, size: int = 8) -> FileGraph:
    graph = nx.random_partition_graph([size] * modules, 0.6, 0.05, seed=seed)
    edges = {(f"n{u:03d}", f"n{v:03d}"): 1.0 for u, v in graph.edges() if u != v}
    return FileGraph.build((f"n{u:03d}" for u in graph.nodes()), edges)


def random_architecture(rng: random.Random, files, clusters: int) -> Architecture:
    return Architecture.from_labels({f: f"K{rng.randrange(clusters)}" for f in files})


SYLLABLES = [c + v for c in "bdfgklmnprstvz" for v in "aeiou"]


def pseudo_word(n: int) -> str:
    """A letters-only, three-syllable word unique to n < 70**3."""
    syllables = []
    for _ in range(3):
        n, digit = divmod(n, len(SYLLABLES))
        syllables.append(SYLLABLES[digit])
    return "".join(syllables)


def large_project(
    root: Path, modules: int = 125, files_per_module: int = 80, edges_per_file: int = 10, seed: int = 11
) -> dict:
    """Generated C project: one folder and one vocabulary per module, edges_per_file edges per file.

    Per file: edges_per_file - 2 calls inside the module, one use of a module variable, one call
    into a random other module.
    """
    rng = random.Random(seed)
    source_root = root / "src"
    entities, owned = [], []
    for m in range(modules):
        vocabulary = [pseudo_word(m * 16 + j) for j in range(16)]
        folder = source_root / f"mod{m:03d}"
        folder.mkdir(parents=True)
        module = []
        for i in range(files_per_module):
            file_id = f"mod{m:03d}/unit{i:03d}.c"
            words = rng.sample(vocabulary, 6)
            names = [camel(words[0], words[1]), camel(words[2], words[3])]
            variable = camel(words[4], "table")
            noise = [pseudo_word(rng.randrange(100_000, 200_000)) for _ in range(3)]

            entities.append({"id": file_id, "kind": "File", "name": f"unit{i:03d}.c", "file": file_id})
            for name in names:
                entities.append({"id": f"{file_id}::{name}", "kind": "Function", "name": name, "file": file_id})
            entities.append({"id": f"{file_id}::{variable}", "kind": "Variable", "name": variable, "file": file_id})
            module.append(([f"{file_id}::{name}" for name in names], f"{file_id}::{variable}"))

            (folder / f"unit{i:03d}.c").write_text(
                f"/* {' '.join(words + noise)} */\n"
                f"static int {variable};\n"
                f"int {names[1]}(void) {{ return {variable}; }}\n"
                f"int {names[0]}(void) {{ return {names[1]}(); }}\n",
                encoding="utf-8",
            )
        owned.append(module)

    edges = []
    for m, module in enumerate(owned):
        targets = [fid for functions, _ in module for fid in functions]
        for functions, _ in module:
            for _ in range(edges_per_file - 2):
                src, dst = rng.choice(functions), rng.choice(targets)
                if src == dst:
                    dst = targets[(targets.index(dst) + 1) % len(targets)]
                edges.append({"src": src, "dst": dst, "type": "Call", "count": 1})
            edges.append({"src": functions[0], "dst": rng.choice(module)[1], "type": "Use", "count": 1})
            other = owned[(m + rng.randrange(1, modules)) % modules]
            edges.append({"src": functions[1], "dst": rng.choice(rng.choice(other)[0]), "type": "Call", "count": 1})

    deps = root / "deps.json"
    deps.write_text(json.dumps({"entities": entities, "edges": edges}), encoding="utf-8")
    return {"deps": deps, "source_root": source_root, "files": modules * files_per_module, "edges": len(edges)}
