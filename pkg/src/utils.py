import hashlib
import json
import re
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, List, Union

from nltk.stem import PorterStemmer
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

from src.errors import InputError

RESOURCES = Path(__file__).resolve().parent / "resources"
KEYWORD_LISTS = ("generic", "c", "cpp", "java", "python")

_SEPARATORS = re.compile(r"[_\-\d\W]+")
_CAMEL_PIECES = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")


def tokenize_identifier(name: str) -> List[str]:
    """Split an identifier on camel-case, underscores, hyphens and digits."""
    words = []
    for chunk in _SEPARATORS.split(name):
        words.extend(piece.lower() for piece in _CAMEL_PIECES.findall(chunk))
    return [w for w in words if w]


def tokenize_text(text: str) -> List[str]:
    words = []
    for token in re.findall(r"[A-Za-z][A-Za-z0-9_]*", text):
        words.extend(tokenize_identifier(token))
    return words


@lru_cache(maxsize=None)
def keyword_stop_words() -> frozenset:
    words = set()
    for name in KEYWORD_LISTS:
        for line in (RESOURCES / "stopwords" / f"{name}.txt").read_text(encoding="utf-8").splitlines():
            line = line.strip().lower()
            if line and not line.startswith("#"):
                words.add(line)
    return frozenset(words)


@lru_cache(maxsize=None)
def _stemmer() -> PorterStemmer:
    return PorterStemmer()


def normalize_word(word: str, extra_stop_words: Iterable[str] = ()) -> Union[str, None]:
    """Stop-list filtering, stemming and length filtering for one lowercase word."""
    word = word.lower()
    if word in ENGLISH_STOP_WORDS or word in keyword_stop_words() or word in extra_stop_words:
        return None
    stemmed = _stemmer().stem(word)
    if len(stemmed) < 2:
        return None
    return stemmed


def load_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def file_digest(path: Union[str, Path]) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            sha.update(block)
    return sha.hexdigest()


def text_digest(*parts: str) -> str:
    sha = hashlib.sha256()
    for part in parts:
        sha.update(part.encode("utf-8"))
        sha.update(b"\0")
    return sha.hexdigest()
