"""End-to-end document pipeline with per-stage wall-clock timing."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus_io import (
    Document,
    RawDocument,
    StopList,
    default_abbreviations,
    default_stoplist,
    preprocess,
)
from .evaluate import FresaReport, evaluate_summary
from .normalize import NormalizationStrategy, normalize_rows
from .stemmers import get_stemmer
from .summarize import Budget, SummarizerKind, SummaryScore, extract, score_sentences, summarize_matrix
from .vsm import SentenceMatrix, matrix_from_rows


@dataclass
class TimingRecord:
    doc_id: str
    t_filter: float = 0.0
    t_normalize: float = 0.0
    t_vectorize: float = 0.0
    t_summarize: float = 0.0
    total: float = 0.0

    @property
    def tau(self) -> float:
        """Filtering + normalization + summarizer (vectorizing and scoring)."""
        return self.t_filter + self.t_normalize + self.t_vectorize + self.t_summarize

    def as_row(self) -> dict[str, object]:
        return {
            "doc_id": self.doc_id,
            "t_filter": self.t_filter,
            "t_normalize": self.t_normalize,
            "t_vectorize": self.t_vectorize,
            "t_summarize": self.t_summarize,
            "tau": self.tau,
            "total": self.total,
        }


@dataclass
class DocumentRun:
    document: Document
    matrix: SentenceMatrix
    summary: SummaryScore
    text: str
    timing: TimingRecord = field(repr=False)


def run_document(
    raw: RawDocument,
    strategy: NormalizationStrategy,
    kind: SummarizerKind | str,
    budget: Budget | None = None,
    stoplist: StopList | None = None,
    abbreviations: Iterable[str] | None = None,
) -> DocumentRun:
    """Split, filter, normalize, vectorize and summarize one document."""
    if stoplist is None:
        stoplist = default_stoplist(raw.language)
    if abbreviations is None:
        abbreviations = default_abbreviations(raw.language)
    budget = budget or default_budget(raw)
    timing = TimingRecord(raw.id)
    clock = time.perf_counter
    start = clock()

    t0 = clock()
    doc = preprocess(raw, stoplist, abbreviations)
    t1 = clock()
    rows = normalize_rows(doc.token_rows(), strategy, doc.language)
    t2 = clock()
    matrix = matrix_from_rows(rows, strategy.label)
    t3 = clock()
    summary, text = summarize_matrix(matrix, doc, kind, budget)
    t4 = clock()

    timing.t_filter, timing.t_normalize = t1 - t0, t2 - t1
    timing.t_vectorize, timing.t_summarize = t3 - t2, t4 - t3
    timing.total = clock() - start
    return DocumentRun(doc, matrix, summary, text, timing)


def default_budget(raw: RawDocument) -> Budget:
    """100 words for English multi-document clusters, 10 % of sentences otherwise."""
    if raw.is_cluster and raw.language == "en":
        return Budget("words", 100)
    return Budget("percent", 10)


def evaluation_source(
    raw: RawDocument, stoplist: StopList, abbreviations: Iterable[str]
) -> Document:
    """The source as seen by the evaluator: stop words removed, hapaxes kept."""
    return preprocess(raw, stoplist, abbreviations, min_freq=1)


def evaluate_selection(source: Document, selected: Sequence[int]) -> FresaReport:
    summary = Document(source.id, source.language, tuple(source.sentences[i] for i in selected))
    return evaluate_summary(source, summary, get_stemmer(source.language))


@dataclass
class SweepRow:
    doc_id: str
    summarizer: str
    norm: str
    selected: tuple[int, ...]
    report: FresaReport

    def as_row(self) -> dict[str, object]:
        return {"doc_id": self.doc_id, "summarizer": self.summarizer, "norm": self.norm, **self.report.as_row()}


def sweep_document(
    raw: RawDocument,
    strategies: Sequence[NormalizationStrategy],
    kinds: Sequence[SummarizerKind | str],
    budget: Budget | None = None,
    stoplist: StopList | None = None,
    abbreviations: Iterable[str] | None = None,
) -> list[SweepRow]:
    """Summarize ``raw`` under every strategy and summarizer and score each result."""
    if stoplist is None:
        stoplist = default_stoplist(raw.language)
    if abbreviations is None:
        abbreviations = default_abbreviations(raw.language)
    abbreviations = frozenset(abbreviations)
    budget = budget or default_budget(raw)
    doc = preprocess(raw, stoplist, abbreviations)
    source = evaluation_source(raw, stoplist, abbreviations)
    rows = []
    for strategy in strategies:
        matrix = matrix_from_rows(normalize_rows(doc.token_rows(), strategy, doc.language), strategy.label)
        for kind in kinds:
            kind = SummarizerKind(kind)
            summary = extract(score_sentences(matrix, kind), doc, budget)
            report = evaluate_selection(source, summary.selected)
            rows.append(SweepRow(raw.id, kind.value, strategy.label, summary.selected, report))
    return rows
