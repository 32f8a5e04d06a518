"""Stemmers against word/stem pairs frozen from the reference Snowball implementation."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultrasumm.stemmers import get_stemmer

DATA = Path(__file__).parent / "data"


def _pairs(lang: str) -> list[tuple[str, str]]:
    lines = (DATA / f"stems_{lang}.tsv").read_text(encoding="utf-8").splitlines()
    return [tuple(line.split("\t")) for line in lines if line and not line.startswith("#")]


@pytest.mark.parametrize("lang", ["en", "es", "fr"])
def test_golden_stems(lang):
    stem = get_stemmer(lang)
    pairs = _pairs(lang)
    assert len(pairs) == 3000
    wrong = [(w, s, stem(w)) for w, s in pairs if stem(w) != s]
    assert wrong == []


def test_relationship_and_relations_share_prefix():
    stem = get_stemmer("en")
    a, b = stem("relationship"), stem("relations")
    assert a == "relationship"
    assert b == "relat"
    assert a.startswith("relat")


@pytest.mark.parametrize(
    "lang,word,expected",
    [
        ("en", "sings", "sing"),
        ("en", "singing", "sing"),
        ("en", "deposition", "deposit"),
        ("en", "lewinsky", "lewinski"),
        ("es", "canciones", "cancion"),
        ("fr", "chantaient", "chant"),
    ],
)
def test_known_stems(lang, word, expected):
    assert get_stemmer(lang)(word) == expected


def test_unknown_language():
    with pytest.raises(ValueError):
        get_stemmer("de")


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyzéèàçñü", max_size=15))
def test_stem_never_longer_than_word(word):
    for lang in ("en", "es", "fr"):
        assert len(get_stemmer(lang)(word)) <= len(word)
