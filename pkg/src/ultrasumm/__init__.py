"""Extractive summarization with first-n-letter truncation (Fix_n) and other word normalizations."""

from .corpus_io import Document, RawDocument, Sentence, StopList, load_corpus, preprocess, split_sentences
from .normalize import LemmaDict, NormalizationStrategy, NormKind, parse_strategy
from .summarize import Budget, SummarizerKind
from .vsm import SentenceMatrix, density, gram, vectorize, volume

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Document",
    "LemmaDict",
    "NormKind",
    "NormalizationStrategy",
    "RawDocument",
    "Sentence",
    "SentenceMatrix",
    "StopList",
    "SummarizerKind",
    "density",
    "gram",
    "load_corpus",
    "parse_strategy",
    "preprocess",
    "split_sentences",
    "vectorize",
    "volume",
]
