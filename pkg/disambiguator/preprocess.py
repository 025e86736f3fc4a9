import re
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Optional

from nltk.stem.porter import PorterStemmer
from unidecode import unidecode

DEFAULT_STOPWORDS_PATH = Path(__file__).parent / "data" / "stopwords.txt"

_NAME_STRIP_RE = re.compile(r"[^a-z0-9,]")
_TITLE_STRIP_RE = re.compile(r"[^a-z0-9]")
_WHITESPACE_RE = re.compile(r"\s+")

# Porter's 1980 algorithm, without NLTK's later extensions.
_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


class TextKind(Enum):
    NAME = "name"
    TITLE = "title"


@lru_cache(maxsize=8)
def load_stopwords(path: Optional[str | Path] = None) -> frozenset[str]:
    path = Path(path) if path is not None else DEFAULT_STOPWORDS_PATH
    if not path.is_file():
        raise FileNotFoundError(f"Stopword list not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        return frozenset(line.strip().lower() for line in f if line.strip())


@lru_cache(maxsize=65536)
def porter_stem(word: str) -> str:
    return _stemmer.stem(word)


def preprocess(text: Optional[str], kind: TextKind, stopwords: Optional[frozenset[str]] = None) -> str:
    """
    Normalize raw text into space-separated tokens.

    Names keep their commas ("Kim, Jinseok" -> "kim, jinseok"); titles lose stopwords and
    are Porter-stemmed ("Generating automatically labeled data" -> "gener automat label data").
    """
    if not text:
        return ""
    text = unidecode(text).lower()
    if kind == TextKind.NAME:
        return _WHITESPACE_RE.sub(" ", _NAME_STRIP_RE.sub(" ", text)).strip()

    stopwords = load_stopwords() if stopwords is None else stopwords
    tokens = _TITLE_STRIP_RE.sub(" ", text).split()
    return " ".join(porter_stem(token) for token in tokens if token not in stopwords)
