"""Bundled suffix-stripping stemmers, one per supported language."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from . import english, french, spanish

_STEMMERS = {"en": english.stem, "es": spanish.stem, "fr": french.stem}

LANGUAGES = tuple(sorted(_STEMMERS))


class UnsupportedLanguage(ValueError):
    pass


def get_stemmer(language: str) -> Callable[[str], str]:
    """Return a memoized stemming function for ``language`` ("en", "es", "fr")."""
    try:
        return _cached(language)
    except KeyError:
        raise UnsupportedLanguage(
            f"no stemmer for language {language!r}; available: {', '.join(LANGUAGES)}"
        ) from None


@lru_cache(maxsize=None)
def _cached(language: str) -> Callable[[str], str]:
    return lru_cache(maxsize=200_000)(_STEMMERS[language])


def stem(word: str, language: str) -> str:
    return get_stemmer(language)(word)
