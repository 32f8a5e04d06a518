"""Representation diagnostics: Mantel tests, letter rankings and word lengths."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus_io import Document
from .normalize import NormalizationStrategy, normalize_rows
from .vsm import gram, vectorize

# permuted statistics within this distance of the observed one count as ties
TIE_TOLERANCE = float(np.sqrt(np.finfo(np.float64).eps))


class DegenerateMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class MantelResult:
    r_observed: float
    permutations: int
    p_value: float
    greater_or_equal_count: int
    seed: int
    null_mean: float
    null_std: float


def as_sym_matrix(a: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    return m


def _centered(values: np.ndarray) -> tuple[np.ndarray, float]:
    centered = values - values.mean()
    ss = float(centered @ centered)
    if not ss > 0:
        raise DegenerateMatrixError("degenerate matrix (constant distances)")
    return centered, ss


def _r(x: np.ndarray, ssx: float, y: np.ndarray, ssy: float) -> float:
    # sqrt(ss * ss) == ss exactly, so identical inputs give r == 1.0
    return float(np.clip((x @ y) / np.sqrt(ssx * ssy), -1.0, 1.0))


def pearson_lower_triangle(a, b) -> float:
    """Pearson r over the strictly lower triangles of two symmetric matrices."""
    A, B = as_sym_matrix(a), as_sym_matrix(b)
    if A.shape != B.shape:
        raise ValueError(f"order mismatch: {A.shape[0]} vs {B.shape[0]}")
    if A.shape[0] < 3:
        raise ValueError("need matrices of order at least 3")
    rows, cols = np.tril_indices(A.shape[0], -1)
    return _r(*_centered(A[rows, cols]), *_centered(B[rows, cols]))


def mantel_test(a, b, permutations: int = 999, seed: int = 0) -> MantelResult:
    """One-sided Mantel test of positive association between ``a`` and ``b``.

    Rows and columns of ``a`` are permuted together with permutations drawn
    from ``numpy.random.default_rng(seed)`` (PCG64), so a given seed always
    yields the same result. The p-value counts the observed arrangement as
    one of the permutations: (count + 1) / (permutations + 1).
    """
    if permutations < 1:
        raise ValueError("permutations must be positive")
    A, B = as_sym_matrix(a), as_sym_matrix(b)
    r_obs = pearson_lower_triangle(A, B)
    P = A.shape[0]
    rows, cols = np.tril_indices(P, -1)
    yb, ssb = _centered(B[rows, cols])
    # permuting A only reorders its triangle, so the sum of squares is fixed
    _, ssa = _centered(A[rows, cols])

    rng = np.random.default_rng(seed)
    null = np.empty(permutations)
    for k in range(permutations):
        perm = rng.permutation(P)
        values = A[perm[rows], perm[cols]]
        null[k] = _r(values - values.mean(), ssa, yb, ssb)
    count = int(np.count_nonzero(null >= r_obs - TIE_TOLERANCE))
    return MantelResult(
        r_observed=r_obs,
        permutations=permutations,
        p_value=(count + 1) / (permutations + 1),
        greater_or_equal_count=count,
        seed=seed,
        null_mean=float(null.mean()),
        null_std=float(null.std()),
    )


def mantel_between_normalizations(
    doc: Document,
    strat_a: NormalizationStrategy,
    strat_b: NormalizationStrategy,
    permutations: int = 999,
    seed: int = 0,
) -> MantelResult:
    """Mantel test between the sentence gram matrices of two normalizations."""
    a = gram(vectorize(doc, strat_a))
    b = gram(vectorize(doc, strat_b))
    return mantel_test(a, b, permutations, seed)


# -- letters and lengths --------------------------------------------------------

@dataclass(frozen=True)
class LetterRanking:
    counts: dict[str, int]
    ranked: list[tuple[str, int]]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _types(corpus: Iterable[Document]) -> set[str]:
    return {tok for doc in corpus for sent in doc.sentences for tok in sent.tokens}


def letter_ranking(corpus: Iterable[Document]) -> LetterRanking:
    """Number of distinct word types per initial letter, most frequent first."""
    counts = Counter(t[0] for t in _types(corpus))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return LetterRanking(dict(counts), ranked)


@dataclass(frozen=True)
class LengthDistribution:
    histogram: dict[int, int]
    mean: float
    mode: int

    @property
    def curve(self) -> dict[int, float]:
        """Histogram divided by its largest bin."""
        peak = max(self.histogram.values())
        return {k: v / peak for k, v in sorted(self.histogram.items())}

    @property
    def max_length(self) -> int:
        return max(self.histogram)


def word_length_distribution(
    corpus: Iterable[Document], strategy: NormalizationStrategy | None = None
) -> LengthDistribution:
    """Letters per token over all token occurrences, optionally after normalizing."""
    lengths: Counter = Counter()
    for doc in corpus:
        rows = doc.token_rows()
        if strategy is not None:
            rows = normalize_rows(rows, strategy, doc.language)
        for row in rows:
            lengths.update(len(t) for t in row)
    if not lengths:
        raise ValueError("empty corpus")
    total = sum(lengths.values())
    mean = sum(k * v for k, v in lengths.items()) / total
    top = max(lengths.values())
    mode = min(k for k, v in lengths.items() if v == top)
    return LengthDistribution(dict(sorted(lengths.items())), mean, mode)
