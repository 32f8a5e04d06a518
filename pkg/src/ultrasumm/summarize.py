"""Sentence scoring (Cortex, Enertex, Artex), budgeted extraction and assembly."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .corpus_io import Document
from .vsm import SentenceMatrix, gram


class SummarizerKind(str, enum.Enum):
    CORTEX = "cortex"
    ENERTEX = "enertex"
    ARTEX = "artex"

    def __str__(self) -> str:
        return self.value


def _dense(m: SentenceMatrix | np.ndarray) -> np.ndarray:
    if isinstance(m, SentenceMatrix):
        return m.to_dense().astype(np.float64)
    return np.asarray(m, dtype=np.float64)


def minmax(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Rescale to [0, 1]; a constant vector maps to 0.5 everywhere."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        return v.copy()
    lo, hi = v.min(), v.max()
    if not hi > lo:
        return np.full_like(v, 0.5)
    return (v - lo) / (hi - lo)


def score_artex(m: SentenceMatrix | np.ndarray) -> np.ndarray:
    """Artex: (s_i . g) (s_i . 1) / (P N), g the mean column vector.

    s_i . g measures how close a sentence is to the document's global topic,
    s_i . 1 is the number of words it uses.
    """
    s = _dense(m)
    P, N = s.shape
    if N == 0:
        return np.zeros(P)
    g = s.mean(axis=0)
    return (s @ g) * s.sum(axis=1) / (P * N)


def score_enertex(m: SentenceMatrix | np.ndarray) -> np.ndarray:
    """Enertex: textual energy E = G G with G = S S^T; score_i = sum_j |E_ij|."""
    if isinstance(m, SentenceMatrix):
        g = gram(m).astype(np.float64)
    else:
        s = _dense(m)
        g = s @ s.T
    return np.abs(g @ g).sum(axis=1)


def cortex_metrics(m: SentenceMatrix | np.ndarray) -> np.ndarray:
    """Raw Cortex metrics, one column each: frequency, entropy, interaction."""
    s = _dense(m)
    P = s.shape[0]
    freq = s.sum(axis=1)
    entropy = np.zeros(P)
    nz = freq > 0
    if nz.any():
        p = s[nz] / freq[nz, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            plogp = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
        entropy[nz] = -plogp.sum(axis=1)
    g = s @ s.T
    interaction = g.sum(axis=1) - np.diag(g)
    return np.column_stack([freq, entropy, interaction])


def cortex_vote(normalized: np.ndarray) -> np.ndarray:
    """Decision over metrics already scaled to [0, 1].

    Each metric votes for the sentence by how far it sits above 0.5 and
    against it by how far below. The balance is mapped back to [0, 1].
    """
    lam = np.atleast_2d(np.asarray(normalized, dtype=np.float64))
    k_pos = np.where(lam > 0.5, lam - 0.5, 0.0).sum(axis=1)
    k_neg = np.where(lam < 0.5, 0.5 - lam, 0.0).sum(axis=1)
    return 0.5 + (k_pos - k_neg) / (2 * lam.shape[1])


def score_cortex(m: SentenceMatrix | np.ndarray) -> np.ndarray:
    metrics = cortex_metrics(m)
    scaled = np.column_stack([minmax(metrics[:, k]) for k in range(metrics.shape[1])])
    return cortex_vote(scaled)


SCORERS: dict[SummarizerKind, Callable[[SentenceMatrix | np.ndarray], np.ndarray]] = {
    SummarizerKind.CORTEX: score_cortex,
    SummarizerKind.ENERTEX: score_enertex,
    SummarizerKind.ARTEX: score_artex,
}


def score_sentences(m: SentenceMatrix, kind: SummarizerKind | str) -> np.ndarray:
    """Scores of ``kind`` rescaled to [0, 1] within the document."""
    return minmax(SCORERS[SummarizerKind(kind)](m))


# -- budgets and extraction ----------------------------------------------------

_BUDGET_RE = re.compile(r"^(words|sentences|percent):(\d+(?:\.\d+)?)$")


@dataclass(frozen=True)
class Budget:
    unit: str
    value: float

    def __post_init__(self) -> None:
        if self.unit not in ("words", "sentences", "percent"):
            raise ValueError(f"unknown budget unit {self.unit!r}")
        if not self.value > 0:
            raise ValueError("budget must be positive")
        if self.unit != "percent" and self.value != int(self.value):
            raise ValueError(f"{self.unit} budget must be a whole number")

    @classmethod
    def parse(cls, text: str) -> Budget:
        match = _BUDGET_RE.match(text.strip().lower())
        if not match:
            raise ValueError(f"bad budget {text!r}; use words:<k>, sentences:<k> or percent:<p>")
        return cls(match.group(1), float(match.group(2)))

    def __str__(self) -> str:
        value = int(self.value) if self.value == int(self.value) else self.value
        return f"{self.unit}:{value}"

    def sentence_quota(self, P: int) -> int | None:
        if self.unit == "sentences":
            return int(self.value)
        if self.unit == "percent":
            # tolerate float noise such as 10 * 30 / 100 = 3.0000000000000004
            return math.ceil(round(self.value * P / 100, 9))
        return None


@dataclass(frozen=True)
class SummaryScore:
    scores: tuple[float, ...]
    selected: tuple[int, ...]
    budget: Budget
    whole_document: bool = False


def word_count(surface: str) -> int:
    return len(surface.split())


def extract(scores: Sequence[float], doc: Document, budget: Budget) -> SummaryScore:
    """Greedy selection by descending score until the budget is met.

    Ties go to the lower sentence index. The last sentence may overflow a
    word budget. Sentences without tokens are skipped unless every sentence
    is empty. If the budget covers the whole document, every sentence is
    returned and ``whole_document`` is set.
    """
    P = doc.P
    if len(scores) != P:
        raise ValueError(f"{len(scores)} scores for {P} sentences")
    scores = tuple(float(s) for s in scores)
    quota = budget.sentence_quota(P)
    lengths = [word_count(s.surface) for s in doc.sentences]

    if (quota is not None and quota >= P) or (quota is None and budget.value >= sum(lengths)):
        return SummaryScore(scores, tuple(range(P)), budget, whole_document=True)

    eligible = [i for i in range(P) if not doc.sentences[i].is_empty] or list(range(P))
    ranked = sorted(eligible, key=lambda i: (-scores[i], i))
    chosen: list[int] = []
    words = 0
    for i in ranked:
        if quota is not None:
            if len(chosen) >= quota:
                break
        elif words >= budget.value:
            break
        chosen.append(i)
        words += lengths[i]
    return SummaryScore(scores, tuple(sorted(chosen)), budget)


def assemble(summary: SummaryScore, doc: Document) -> str:
    return " ".join(doc.sentences[i].surface for i in summary.selected)


def summarize_matrix(
    m: SentenceMatrix, doc: Document, kind: SummarizerKind | str, budget: Budget
) -> tuple[SummaryScore, str]:
    summary = extract(score_sentences(m, kind), doc, budget)
    return summary, assemble(summary, doc)
