from __future__ import annotations

import pytest

from ultrasumm.corpus_io import (
    RawDocument,
    bundled_corpus,
    default_abbreviations,
    default_stoplist,
    load_corpus,
    preprocess,
)

LANGS = ("en", "es", "fr")

# NYT19990412.0403, first three sentences
NYT_TEXT = (
    "A federal judge Monday found President Clinton in civil contempt of court for lying in a "
    "deposition about the nature of his sexual relationship with former White House intern Monica "
    "S. Lewinsky. Clinton, in a January 1998 deposition in the Paula Jones sexual harassment case, "
    "swore that he did not have a sexual relationship with Lewinsky. Clinton later explained that he "
    "did not believe he had lied in the case because the type of sex he had with Lewinsky did not "
    "fall under the definition of sexual relations used in the case."
)


@pytest.fixture
def nyt_raw() -> RawDocument:
    return RawDocument("NYT19990412.0403", NYT_TEXT, "en")


@pytest.fixture
def nyt_doc(nyt_raw):
    # three sentences: every content word would be a hapax, so nothing is dropped for rarity
    return preprocess(nyt_raw, default_stoplist("en"), default_abbreviations("en"), min_freq=1)


def corpus(lang: str):
    return load_corpus(bundled_corpus(lang), lang)


def documents(lang: str):
    return [preprocess(d) for d in corpus(lang)]


@pytest.fixture(params=LANGS)
def lang(request) -> str:
    return request.param
