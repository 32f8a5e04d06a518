"""Reference-free summary evaluation (FRESA) over unigrams, bigrams and SU4."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from .corpus_io import Document, RawDocument, StopList, default_stoplist, preprocess
from .stemmers import get_stemmer

SU4_GAP = 2


class Grain(str, enum.Enum):
    UNIGRAM = "unigram"
    BIGRAM = "bigram"
    SU4 = "su4"


@dataclass(frozen=True)
class NgramProfile:
    grain: Grain
    counts: Mapping[object, int]
    total: int

    @classmethod
    def from_counter(cls, grain: Grain, counter: Counter) -> NgramProfile:
        counts = {k: v for k, v in counter.items() if v > 0}
        return cls(grain, MappingProxyType(counts), sum(counts.values()))


@dataclass(frozen=True)
class FresaReport:
    fresa1: float
    fresa2: float
    fresaSU4: float
    mean: float
    D1: float
    D2: float
    DSU4: float

    def as_row(self) -> dict[str, float]:
        return {"fresa1": self.fresa1, "fresa2": self.fresa2, "fresaSU4": self.fresaSU4, "mean": self.mean}


def sentence_ngrams(stems: Sequence[str], grain: Grain) -> Iterable[object]:
    if grain is Grain.UNIGRAM:
        yield from stems
        return
    max_gap = 0 if grain is Grain.BIGRAM else SU4_GAP
    k = len(stems)
    for i in range(k):
        for j in range(i + 1, min(k, i + 2 + max_gap)):
            yield (stems[i], stems[j])


def profile(
    doc: Document | Sequence[Sequence[str]],
    grain: Grain | str,
    stemmer: Callable[[str], str] | None = None,
    stoplist: StopList | Iterable[str] | None = None,
) -> NgramProfile:
    """Count n-grams of ``grain`` sentence by sentence.

    Tokens in ``stoplist`` are dropped and the rest are passed through
    ``stemmer`` before counting. Pairs never span two sentences.
    """
    grain = Grain(grain)
    rows = doc.token_rows() if isinstance(doc, Document) else doc
    counter: Counter = Counter()
    for row in rows:
        stems = [t for t in row if stoplist is None or t not in stoplist]
        if stemmer is not None:
            stems = [stemmer(t) for t in stems]
        counter.update(sentence_ngrams(stems, grain))
    return NgramProfile.from_counter(grain, counter)


def divergence(source: NgramProfile, summary: NgramProfile) -> float:
    """sum over source terms t of |log(C_t^T/|T| + 1) - log(C_t^S/|S| + 1)|."""
    if source.grain != summary.grain:
        raise ValueError(f"grain mismatch: {source.grain} vs {summary.grain}")
    if source.total < 1:
        raise ValueError("empty source")
    total = 0.0
    for term, c_t in source.counts.items():
        c_s = summary.counts.get(term, 0) if summary.total else 0
        p_s = c_s / summary.total if summary.total else 0.0
        total += abs(math.log1p(c_t / source.total) - math.log1p(p_s))
    return total


def fresa_score(d: float) -> float:
    if d < 0:
        raise ValueError("divergence must be non-negative")
    return 1.0 / (1.0 + d)


def evaluate_summary(
    source: Document,
    summary: Document,
    stemmer: Callable[[str], str] | None = None,
    stoplist: StopList | Iterable[str] | None = None,
) -> FresaReport:
    if stemmer is None:
        stemmer = get_stemmer(source.language)
    ds = []
    for grain in Grain:
        src = profile(source, grain, stemmer, stoplist)
        if grain is Grain.UNIGRAM and src.total == 0:
            raise ValueError("empty source")
        if src.total == 0:
            # sentences of a single token carry no pairs
            ds.append(0.0)
            continue
        ds.append(divergence(src, profile(summary, grain, stemmer, stoplist)))
    f1, f2, f4 = (fresa_score(d) for d in ds)
    return FresaReport(f1, f2, f4, (f1 + f2 + f4) / 3, ds[0], ds[1], ds[2])


def evaluate_text(
    source_text: str,
    summary_text: str,
    language: str,
    stoplist: StopList | None = None,
    abbreviations: Iterable[str] | None = None,
) -> FresaReport:
    """Evaluate raw text against raw text.

    Both sides are split and stop-word filtered without the hapax rule, since
    a short summary would lose almost every word to it.
    """
    if stoplist is None:
        stoplist = default_stoplist(language)
    src = preprocess(RawDocument("source", source_text, language), stoplist, abbreviations, min_freq=1)
    summ = preprocess(RawDocument("summary", summary_text, language), stoplist, abbreviations, min_freq=1)
    return evaluate_summary(src, summ, get_stemmer(language))
