"""Sentence-by-term occurrence matrices and their density and volume."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from ._io import atomic_write_text
from .corpus_io import Document
from .normalize import NormalizationStrategy, normalize_rows


class EmptyDocumentError(ValueError):
    pass


@dataclass(frozen=True)
class SentenceMatrix:
    """Sparse P x N count matrix.

    ``counts`` maps ``(row, col)`` to a positive count; zero cells are
    absent. Columns are labelled by ``vocab``, sorted.
    """

    P: int
    vocab: tuple[str, ...]
    counts: Mapping[tuple[int, int], int]
    strategy: str = "raw"
    _dense: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def N(self) -> int:
        return len(self.vocab)

    @property
    def nonzeros(self) -> int:
        return len(self.counts)

    def to_dense(self) -> np.ndarray:
        if self._dense is None:
            dense = np.zeros((self.P, self.N), dtype=np.int64)
            for (i, j), c in self.counts.items():
                dense[i, j] = c
            dense.setflags(write=False)
            object.__setattr__(self, "_dense", dense)
        return self._dense

    def row_sums(self) -> np.ndarray:
        sums = np.zeros(self.P, dtype=np.int64)
        for (i, _), c in self.counts.items():
            sums[i] += c
        return sums

    def column(self, term: str) -> int:
        return self.vocab.index(term)

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild from a plain dict
        return (_rebuild_matrix, (self.P, self.vocab, dict(self.counts), self.strategy))


def _rebuild_matrix(P, vocab, counts, strategy):
    return SentenceMatrix(P, vocab, MappingProxyType(counts), strategy)


@dataclass(frozen=True)
class MatrixStats:
    density: float
    size: int
    nonzeros: int
    volume: float | None = None
    exact_density: Fraction = Fraction(0)


def matrix_from_rows(rows: Sequence[Sequence[str]], strategy: str = "raw") -> SentenceMatrix:
    """Count matrix of already normalized token rows."""
    if not rows:
        raise EmptyDocumentError("empty document")
    vocab = tuple(sorted({t for row in rows for t in row}))
    col = {t: j for j, t in enumerate(vocab)}
    counts: dict[tuple[int, int], int] = {}
    for i, row in enumerate(rows):
        for term, c in sorted(Counter(row).items()):
            counts[(i, col[term])] = c
    return SentenceMatrix(len(rows), vocab, MappingProxyType(counts), strategy)


def vectorize(doc: Document, strategy: NormalizationStrategy) -> SentenceMatrix:
    if doc.P == 0:
        raise EmptyDocumentError(f"empty document: {doc.id}")
    rows = normalize_rows(doc.token_rows(), strategy, doc.language)
    return matrix_from_rows(rows, strategy.label)


def density(m: SentenceMatrix, raw_baseline: SentenceMatrix | None = None) -> MatrixStats:
    """delta = nonzeros / (P N), computed exactly."""
    size = m.P * m.N
    if size == 0:
        raise ValueError(f"density undefined for a {m.P}x{m.N} matrix")
    exact = Fraction(m.nonzeros, size)
    vol = volume(m, raw_baseline) if raw_baseline is not None else None
    return MatrixStats(float(exact), size, m.nonzeros, vol, exact)


def volume(m: SentenceMatrix, raw_baseline: SentenceMatrix) -> float:
    """Size of ``m`` relative to the raw-text matrix of the same document."""
    base = raw_baseline.P * raw_baseline.N
    if base == 0:
        raise ValueError("raw baseline matrix has size 0")
    return float(Fraction(m.P * m.N, base))


def gram(m: SentenceMatrix) -> np.ndarray:
    """Sentence similarity matrix S S^T (integer, symmetric P x P)."""
    s = m.to_dense()
    return s @ s.T


# -- dump format ---------------------------------------------------------------
#
#   P N strategy
#   row col count      (one line per nonzero, row-major)
#   term               (N lines, column order)

def dumps(m: SentenceMatrix) -> str:
    lines = [f"{m.P} {m.N} {m.strategy}"]
    lines.extend(f"{i} {j} {c}" for (i, j), c in sorted(m.counts.items()))
    lines.extend(m.vocab)
    return "\n".join(lines) + "\n"


def loads(text: str) -> SentenceMatrix:
    lines = text.splitlines()
    p_str, n_str, strategy = lines[0].split(maxsplit=2)
    P, N = int(p_str), int(n_str)
    body = lines[1:]
    vocab = tuple(body[len(body) - N :]) if N else ()
    counts = {}
    for line in body[: len(body) - N]:
        i, j, c = (int(x) for x in line.split())
        counts[(i, j)] = c
    return SentenceMatrix(P, vocab, MappingProxyType(counts), strategy)


def write_dump(m: SentenceMatrix, path: str | Path) -> None:
    atomic_write_text(path, dumps(m))
