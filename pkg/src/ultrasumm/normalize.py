"""Word normalization: raw text, stemming, dictionary lemmas and Fix(n) truncation."""

from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .stemmers import get_stemmer

logger = logging.getLogger(__name__)

MAX_FIX = 32


class ConfigurationError(ValueError):
    pass


class LemmaDictError(ValueError):
    pass


class NormKind(enum.Enum):
    RAW = "raw"
    STEM = "stem"
    LEMMA = "lemma"
    FIX = "fix"


@dataclass(frozen=True)
class LemmaDict:
    language: str
    entries: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        lowered = {k.lower(): v.lower() for k, v in self.entries.items()}
        object.__setattr__(self, "entries", MappingProxyType(lowered))

    def __len__(self) -> int:
        return len(self.entries)

    def __reduce__(self):
        return (LemmaDict, (self.language, dict(self.entries)))

    def lookup(self, word: str) -> str:
        # out-of-vocabulary words map to themselves
        return self.entries.get(word, word)


@dataclass(frozen=True)
class NormalizationStrategy:
    kind: NormKind
    n: int | None = None
    lemma_dictionary: LemmaDict | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind is NormKind.FIX:
            if self.n is None or not 1 <= self.n <= MAX_FIX:
                raise ConfigurationError(f"Fix(n) needs 1 <= n <= {MAX_FIX}, got {self.n!r}")
        elif self.n is not None:
            raise ConfigurationError(f"{self.kind.value} takes no length parameter")

    @classmethod
    def raw(cls) -> NormalizationStrategy:
        return cls(NormKind.RAW)

    @classmethod
    def stem(cls) -> NormalizationStrategy:
        return cls(NormKind.STEM)

    @classmethod
    def lemma(cls, dictionary: LemmaDict | None) -> NormalizationStrategy:
        return cls(NormKind.LEMMA, lemma_dictionary=dictionary)

    @classmethod
    def fix(cls, n: int) -> NormalizationStrategy:
        return cls(NormKind.FIX, n)

    @property
    def label(self) -> str:
        """Name used on the command line, e.g. ``fix:3``."""
        return f"fix:{self.n}" if self.kind is NormKind.FIX else self.kind.value

    @property
    def slug(self) -> str:
        """Name safe for file names, e.g. ``fix3``."""
        return self.label.replace(":", "")

    def __str__(self) -> str:
        return self.label


_FIX_RE = re.compile(r"^fix:?(\d+)$")


def parse_strategy(
    text: str, language: str | None = None, lemma_dictionary: LemmaDict | None = None
) -> NormalizationStrategy:
    """Parse ``raw``, ``stem``, ``lemma`` or ``fix:<n>``.

    For ``lemma`` the bundled dictionary of ``language`` is used unless one
    is passed in.
    """
    key = text.strip().lower()
    if key == "raw":
        return NormalizationStrategy.raw()
    if key == "stem":
        return NormalizationStrategy.stem()
    if key == "lemma":
        if lemma_dictionary is None and language is not None:
            lemma_dictionary = default_lemma_dict(language)
        if lemma_dictionary is None:
            raise ConfigurationError("lemma normalization needs a lemma dictionary")
        return NormalizationStrategy.lemma(lemma_dictionary)
    match = _FIX_RE.match(key)
    if match:
        return NormalizationStrategy.fix(int(match.group(1)))
    raise ConfigurationError(f"unknown normalization {text!r}; use raw, stem, lemma or fix:<n>")


def normalize_token(token: str, strategy: NormalizationStrategy, language: str = "en") -> str:
    kind = strategy.kind
    if kind is NormKind.RAW:
        return token
    if kind is NormKind.FIX:
        return token[: strategy.n]
    if kind is NormKind.LEMMA:
        if strategy.lemma_dictionary is None:
            raise ConfigurationError("lemma normalization needs a lemma dictionary")
        return strategy.lemma_dictionary.lookup(token)
    return get_stemmer(language)(token)


def normalize_sentence(
    tokens: Sequence[str], strategy: NormalizationStrategy, language: str = "en"
) -> list[str]:
    kind = strategy.kind
    if kind is NormKind.RAW:
        return list(tokens)
    if kind is NormKind.FIX:
        n = strategy.n
        return [t[:n] for t in tokens]
    if kind is NormKind.STEM:
        stem = get_stemmer(language)
        return [stem(t) for t in tokens]
    return [normalize_token(t, strategy, language) for t in tokens]


def normalize_rows(
    rows: Iterable[Sequence[str]], strategy: NormalizationStrategy, language: str = "en"
) -> list[list[str]]:
    return [normalize_sentence(row, strategy, language) for row in rows]


def _parse_lemma_lines(lines: Iterable[str], source: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" not in line:
            raise LemmaDictError(f"{source}:{lineno}: expected 'surface<TAB>lemma'")
        surface, lemma = line.split("\t", 1)
        surface, lemma = surface.strip().lower(), lemma.strip().lower()
        if not surface or not lemma:
            raise LemmaDictError(f"{source}:{lineno}: empty surface form or lemma")
        entries[surface] = lemma
    return entries


def load_lemma_dict(path: str | Path, language: str) -> LemmaDict:
    """Read a tab-separated ``surface<TAB>lemma`` file; later keys win."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        entries = _parse_lemma_lines(fh, str(path))
    logger.info("loaded %d lemma entries from %s", len(entries), path)
    return LemmaDict(language, entries)


_DEFAULT_LEMMAS: dict[str, LemmaDict] = {}


def default_lemma_dict(language: str) -> LemmaDict:
    if language not in _DEFAULT_LEMMAS:
        res = resources.files("ultrasumm").joinpath("data").joinpath("lemmas").joinpath(f"{language}.tsv")
        if not res.is_file():
            raise ConfigurationError(f"no bundled lemma dictionary for {language!r}")
        text = res.read_text(encoding="utf-8")
        _DEFAULT_LEMMAS[language] = LemmaDict(
            language, _parse_lemma_lines(text.splitlines(), f"lemmas/{language}.tsv")
        )
    return _DEFAULT_LEMMAS[language]
