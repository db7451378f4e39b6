import logging
import posixpath
import re
from collections import Counter
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from src.entities.model import DependencyGraph, EntityKind
from src.entities.text import SourceKind, WordOccurrence
from src.utils import normalize_word, tokenize_identifier, tokenize_text

logger = logging.getLogger(__name__)

SLASH_COMMENT_EXTENSIONS = {
    ".c", ".h", ".cc", ".cpp", ".cxx", ".hh", ".hpp", ".hxx", ".java", ".cs", ".js", ".jsx",
    ".ts", ".tsx", ".go", ".rs", ".kt", ".kts", ".scala", ".swift",
}
HASH_COMMENT_EXTENSIONS = {".py", ".sh", ".bash", ".rb", ".pl", ".pm", ".cmake", ".yaml", ".yml"}

_SLASH_COMMENTS = re.compile(r"//[^\n]*|/\*.*?\*/", re.DOTALL)
_HASH_COMMENTS = re.compile(r"#[^\n]*")

Skip = Tuple[str, str]


def comment_pattern(file_id: str) -> Optional[re.Pattern]:
    name = posixpath.basename(file_id).lower()
    extension = posixpath.splitext(name)[1]
    if extension in SLASH_COMMENT_EXTENSIONS:
        return _SLASH_COMMENTS
    if extension in HASH_COMMENT_EXTENSIONS or name == "cmakelists.txt":
        return _HASH_COMMENTS
    return None


def split_comments(file_id: str, text: str) -> Tuple[List[str], str]:
    """Return the comment bodies and the code with comments blanked out."""
    pattern = comment_pattern(file_id)
    if pattern is None:
        return [], text
    comments = [m.group(0) for m in pattern.finditer(text)]
    code = pattern.sub(lambda m: " " * len(m.group(0)), text)
    return comments, code


def short_name(name: str) -> str:
    """Last component of a qualified name: 'ns::Foo.bar' -> 'bar'."""
    last = re.split(r"::|\.|/", name.strip())[-1]
    match = re.match(r"[A-Za-z_$][A-Za-z0-9_$]*", last)
    return match.group(0) if match else ""


def _definitions(g: DependencyGraph, file_id: str) -> List[Tuple[str, str]]:
    defs = []
    for entity_id in g.children.get(file_id, ()):
        stack = [entity_id]
        while stack:
            entity = g.entity(stack.pop())
            stack.extend(g.children.get(entity.id, ()))
            if entity.kind in (EntityKind.CLASS, EntityKind.FUNCTION) or (
                entity.kind is EntityKind.VARIABLE and entity.owner_id == file_id
            ):
                name = short_name(entity.name)
                if name:
                    defs.append((entity.id, name))
    return sorted(defs)


def extract_file(g: DependencyGraph, file_id: str, text: str) -> Counter:
    counts: Counter = Counter()
    stem = posixpath.splitext(posixpath.basename(file_id))[0]
    for word in tokenize_identifier(stem):
        counts[(file_id, None, SourceKind.FILENAME, word)] += 1

    comments, code = split_comments(file_id, text)
    for comment in comments:
        for word in tokenize_text(comment):
            counts[(file_id, None, SourceKind.COMMENT, word)] += 1

    for entity_id, name in _definitions(g, file_id):
        if re.search(rf"(?<![A-Za-z0-9_$]){re.escape(name)}(?![A-Za-z0-9_$])", code):
            for word in tokenize_identifier(name):
                counts[(file_id, entity_id, SourceKind.DEFINITION, word)] += 1
    return counts


def _to_occurrences(counts: Counter) -> List[WordOccurrence]:
    occs = [
        WordOccurrence(file_id, entity_id, kind, word, count)
        for (file_id, entity_id, kind, word), count in counts.items()
        if word
    ]
    return sorted(occs, key=WordOccurrence.sort_key)


def extract_text(
    source_root: Union[str, Path], g: DependencyGraph, skipped: Optional[List[Skip]] = None
) -> List[WordOccurrence]:
    """Filename, definition and comment words of every file in `g`.

    Unreadable files are skipped with a warning and appended to `skipped`.
    """
    root = Path(source_root)
    counts: Counter = Counter()
    for file_id in g.file_ids:
        try:
            text = (root / file_id).read_text(encoding="utf-8", errors="replace")
        except OSError as e:
            reason = e.strerror or type(e).__name__
            logger.warning(f"[INGEST] skipping {file_id}: {reason}")
            if skipped is not None:
                skipped.append((file_id, reason))
            continue
        counts.update(extract_file(g, file_id, text))

    occs = _to_occurrences(counts)
    logger.info(f"[INGEST] extracted {len(occs)} word occurrences from {len(g.file_ids)} files")
    return occs


def preprocess_words(occs: Iterable[WordOccurrence], extra_stop_words: Iterable[str] = ()) -> List[WordOccurrence]:
    """Stop-word removal and stemming; occurrences that collapse onto one word are summed."""
    extra = frozenset(w.lower() for w in extra_stop_words)
    counts: Counter = Counter()
    for occ in occs:
        word = normalize_word(occ.word, extra)
        if word is not None:
            counts[(occ.file_id, occ.entity_id, occ.source_kind, word)] += occ.count
    return _to_occurrences(counts)


def write_skip_report(skipped: Iterable[Skip], path: Union[str, Path]) -> None:
    lines = [f"SKIP {file_id} {reason}\n" for file_id, reason in sorted(skipped)]
    Path(path).write_text("".join(lines), encoding="utf-8")
