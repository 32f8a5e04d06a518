"""Reading corpora from disk, sentence splitting and token filtering."""

from __future__ import annotations

import logging
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

LANGUAGES = ("en", "es", "fr")
TERMINATORS = ".!?"

# a run of terminators, optionally followed by closing quotes or brackets
_BOUNDARY = re.compile(r"[.!?]+[\"'”’»)\]]*(?=\s|$)")


class IngestionError(OSError):
    """A corpus location that cannot be read at all."""


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str
    language: str
    # several source files concatenated into one document
    is_cluster: bool = False

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be non-empty")


@dataclass(frozen=True)
class Sentence:
    index: int
    surface: str
    tokens: tuple[str, ...]

    @property
    def is_empty(self) -> bool:
        return not self.tokens


@dataclass(frozen=True)
class Document:
    id: str
    language: str
    sentences: tuple[Sentence, ...]

    @property
    def P(self) -> int:
        return len(self.sentences)

    @property
    def surfaces(self) -> list[str]:
        return [s.surface for s in self.sentences]

    def token_rows(self) -> list[tuple[str, ...]]:
        return [s.tokens for s in self.sentences]


@dataclass(frozen=True)
class StopList:
    language: str
    words: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        lowered = frozenset(w.lower() for w in self.words)
        object.__setattr__(self, "words", lowered)

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass
class SkippedFile:
    path: Path
    reason: str


# -- resources ---------------------------------------------------------------

def _data_file(*parts: str):
    res = resources.files("ultrasumm").joinpath("data")
    for part in parts:
        res = res.joinpath(part)
    return res


def _read_word_list(text: str) -> list[str]:
    words = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    return words


def load_stoplist(path: str | Path, language: str) -> StopList:
    """Read a stop-word file: one word per line, ``#`` starts a comment line."""
    text = Path(path).read_text(encoding="utf-8")
    return StopList(language, frozenset(_read_word_list(text)))


def default_stoplist(language: str) -> StopList:
    _check_language(language)
    text = _data_file("stoplists", f"{language}.txt").read_text(encoding="utf-8")
    return StopList(language, frozenset(_read_word_list(text)))


def default_abbreviations(language: str) -> frozenset[str]:
    """Lowercase abbreviations (without the dot) that never end a sentence."""
    _check_language(language)
    text = _data_file("abbreviations", f"{language}.txt").read_text(encoding="utf-8")
    return frozenset(w.rstrip(".") for w in _read_word_list(text))


def bundled_corpus(language: str) -> Path:
    """Filesystem path of the fixture corpus shipped for ``language``."""
    _check_language(language)
    return Path(str(_data_file("corpora", language)))


def _check_language(language: str) -> None:
    if language not in LANGUAGES:
        raise ValueError(f"unsupported language {language!r}; expected one of {LANGUAGES}")


# -- loading -------------------------------------------------------------------

def _read_text(path: Path, skipped: list[SkippedFile] | None) -> str | None:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        reason = f"not valid UTF-8 ({exc.reason} at byte {exc.start})"
    except OSError as exc:
        reason = str(exc)
    logger.warning("skipping %s: %s", path, reason)
    if skipped is not None:
        skipped.append(SkippedFile(path, reason))
    return None


def load_corpus(
    directory: str | Path,
    language: str,
    concat_cluster: bool = True,
    skipped: list[SkippedFile] | None = None,
) -> list[RawDocument]:
    """Load every regular file in ``directory`` as one document.

    Sub-directories are treated as clusters. With ``concat_cluster`` each
    cluster becomes a single document named after the directory; otherwise
    every file inside it is its own document, named ``<cluster>-<file>``.
    Files that cannot be decoded are skipped and reported in ``skipped``.
    """
    root = Path(directory)
    if not root.is_dir():
        raise IngestionError(f"corpus directory not found or unreadable: {root}")

    docs: list[RawDocument] = []
    for entry in sorted(root.iterdir()):
        if entry.name.startswith("."):
            continue
        if entry.is_file():
            text = _read_text(entry, skipped)
            if text is not None:
                docs.append(RawDocument(entry.stem, text, language))
        elif entry.is_dir():
            members = sorted(p for p in entry.iterdir() if p.is_file() and not p.name.startswith("."))
            texts = [(p, _read_text(p, skipped)) for p in members]
            texts = [(p, t) for p, t in texts if t is not None]
            if concat_cluster:
                if texts:
                    joined = "\n\n".join(t.strip() for _, t in texts)
                    docs.append(RawDocument(entry.name, joined, language, is_cluster=True))
            else:
                docs.extend(RawDocument(f"{entry.name}-{p.stem}", t, language) for p, t in texts)

    ids = [d.id for d in docs]
    if len(ids) != len(set(ids)):
        dupes = sorted(i for i, c in Counter(ids).items() if c > 1)
        raise IngestionError(f"duplicate document ids in {root}: {', '.join(dupes)}")
    return sorted(docs, key=lambda d: d.id)


# -- splitting -----------------------------------------------------------------

def _protected(text: str, end: int, abbreviations: Iterable[str]) -> bool:
    """True when the dot ending at ``end`` belongs to an initial or abbreviation."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    if start == end:
        return False
    word = text[start:end].lstrip("(\"'“‘«")
    if len(word) == 1 and word.isalpha() and word.isupper():
        return True
    return word.lower() in abbreviations


def split_sentences(
    doc: RawDocument | str, abbreviations: Iterable[str] = frozenset()
) -> list[str]:
    """Chunk text at ``.``, ``!`` and ``?``.

    A terminator only counts when followed by whitespace or the end of the
    text. A single dot after a capital initial ("S.") or after a known
    abbreviation does not end the sentence.
    """
    text = doc.text if isinstance(doc, RawDocument) else doc
    abbreviations = frozenset(abbreviations)
    sentences: list[str] = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        run = match.group(0)
        if run.rstrip("\"'”’»)]") == "." and _protected(text, match.start(), abbreviations):
            continue
        chunk = text[start : match.end()].strip()
        if chunk:
            sentences.append(" ".join(chunk.split()))
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(" ".join(tail.split()))
    return sentences


# -- tokenizing and filtering -------------------------------------------------------

class _SeparatorTable(dict):
    """str.translate table mapping punctuation, symbols, digits, spaces and controls to a space."""

    def __missing__(self, code: int):
        ch = chr(code)
        value = " " if unicodedata.category(ch)[0] in "PSNZC" else ch
        self[code] = value
        return value


_SEPARATORS = _SeparatorTable()


def tokenize(surface: str) -> list[str]:
    """Lowercase, turn punctuation, symbols and digits into spaces, split.

    Hyphenated and apostrophe-joined words fall apart into their pieces.
    """
    lowered = unicodedata.normalize("NFC", surface.lower())
    return lowered.translate(_SEPARATORS).split()


def document_frequency(surfaces: Iterable[str]) -> Counter:
    freq: Counter = Counter()
    for surface in surfaces:
        freq.update(tokenize(surface))
    return freq


def filter_sentence(
    surface: str,
    stoplist: StopList | Iterable[str],
    doc_frequency: Mapping[str, int],
    min_freq: int = 2,
) -> list[str]:
    """Tokens of ``surface`` minus stop words and words rarer than ``min_freq``."""
    return [
        tok
        for tok in tokenize(surface)
        if tok not in stoplist and doc_frequency.get(tok, 0) >= min_freq
    ]


def preprocess(
    raw: RawDocument,
    stoplist: StopList | None = None,
    abbreviations: Iterable[str] | None = None,
    min_freq: int = 2,
) -> Document:
    """Split and filter a raw document.

    Sentences whose tokens are all filtered away stay in place with an empty
    token list, so indices are stable across normalizations.
    """
    if stoplist is None:
        stoplist = default_stoplist(raw.language)
    if abbreviations is None:
        abbreviations = default_abbreviations(raw.language)
    surfaces = split_sentences(raw, abbreviations)
    freq = document_frequency(surfaces)
    sentences = tuple(
        Sentence(i, surface, tuple(filter_sentence(surface, stoplist, freq, min_freq)))
        for i, surface in enumerate(surfaces)
    )
    return Document(raw.id, raw.language, sentences)


def document_from_sentences(
    doc_id: str, language: str, token_rows: Sequence[Sequence[str]], surfaces: Sequence[str] | None = None
) -> Document:
    """Build a Document directly from already filtered tokens."""
    if surfaces is None:
        surfaces = [" ".join(row) for row in token_rows]
    return Document(
        doc_id,
        language,
        tuple(Sentence(i, s, tuple(row)) for i, (s, row) in enumerate(zip(surfaces, token_rows))),
    )
