from __future__ import annotations

import math
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ultrasumm.analyze import (
    DegenerateMatrixError,
    as_sym_matrix,
    letter_ranking,
    mantel_between_normalizations,
    mantel_test,
    pearson_lower_triangle,
    word_length_distribution,
)
from ultrasumm.corpus_io import document_from_sentences
from ultrasumm.normalize import NormalizationStrategy, parse_strategy
from ultrasumm.vsm import gram, vectorize

from conftest import LANGS, documents


def textbook_pearson(a, b):
    """Pearson r of the strict lower triangles, written out term by term."""
    n = len(a)
    x = [a[i][j] for i in range(n) for j in range(i)]
    y = [b[i][j] for i in range(n) for j in range(i)]
    mx, my = sum(x) / len(x), sum(y) / len(y)
    sxy = sum((p - mx) * (q - my) for p, q in zip(x, y))
    sxx = sum((p - mx) ** 2 for p in x)
    syy = sum((q - my) ** 2 for q in y)
    return sxy / math.sqrt(sxx * syy)


def random_sym(rng, n):
    m = rng.normal(size=(n, n))
    return m + m.T


def test_self_correlation():
    rng = np.random.default_rng(1)
    a = random_sym(rng, 6)
    assert pearson_lower_triangle(a, a) == 1.0
    assert pearson_lower_triangle(a, 2.5 * a + 7) == pytest.approx(1.0, abs=1e-15)


def test_hand_matrices():
    a = [[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]]
    b = [[0, 2, 1, 4], [2, 0, 3, 3], [1, 3, 0, 8], [4, 3, 8, 0]]
    assert pearson_lower_triangle(a, b) == pytest.approx(textbook_pearson(a, b), abs=1e-12)
    # by hand: x = 1,2,4,3,5,6 and y = 2,1,3,4,3,8
    assert pearson_lower_triangle(a, b) == pytest.approx(math.sqrt(17.5 / 29.5), abs=1e-12)


def test_textbook_oracle_random_6x6():
    rng = np.random.default_rng(2024)
    for _ in range(10):
        a, b = random_sym(rng, 6), random_sym(rng, 6)
        assert pearson_lower_triangle(a, b) == pytest.approx(textbook_pearson(a.tolist(), b.tolist()), abs=1e-10)


def test_input_validation():
    with pytest.raises(ValueError, match="square"):
        as_sym_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="symmetric"):
        as_sym_matrix([[0, 1, 2], [0, 0, 0], [2, 0, 0]])
    with pytest.raises(ValueError, match="non-finite"):
        as_sym_matrix([[np.nan]])
    with pytest.raises(ValueError, match="order"):
        pearson_lower_triangle(np.eye(3), np.eye(4))
    with pytest.raises(ValueError, match="at least 3"):
        pearson_lower_triangle(np.eye(2), np.eye(2))
    with pytest.raises(DegenerateMatrixError):
        pearson_lower_triangle(np.ones((4, 4)), random_sym(np.random.default_rng(0), 4))
    with pytest.raises(ValueError):
        mantel_test(np.eye(3), np.eye(3), permutations=0)


def test_mantel_identical_matrices():
    a = random_sym(np.random.default_rng(5), 7)
    res = mantel_test(a, a, 999, seed=3)
    assert res.r_observed == 1.0
    assert res.p_value <= 0.01
    assert res.p_value == (res.greater_or_equal_count + 1) / 1000


def test_mantel_reproducible():
    rng = np.random.default_rng(9)
    a, b = random_sym(rng, 8), random_sym(rng, 8)
    assert mantel_test(a, b, 199, seed=42) == mantel_test(a, b, 199, seed=42)
    assert mantel_test(a, b, 199, seed=42).null_mean != mantel_test(a, b, 199, seed=43).null_mean


def test_mantel_null_pvalues_not_small():
    rng = np.random.default_rng(77)
    ps = []
    for seed in range(20):
        a, b = random_sym(rng, 10), random_sym(rng, 10)
        ps.append(mantel_test(a, b, 999, seed=seed).p_value)
    assert statistics.median(ps) > 0.01
    assert min(ps) >= 1 / 1000


def test_between_normalizations_same_strategy(nyt_doc):
    res = mantel_between_normalizations(nyt_doc, NormalizationStrategy.raw(), NormalizationStrategy.raw(), 9)
    assert res.r_observed == 1.0


@pytest.mark.parametrize("lang", LANGS)
def test_fixture_fix1_positive(lang):
    for doc in documents(lang):
        res = mantel_between_normalizations(doc, NormalizationStrategy.fix(1), NormalizationStrategy.stem(), 999, 0)
        assert res.r_observed > 0
        assert res.p_value <= 0.001


def test_fixture_end_to_end_rerun():
    doc = documents("en")[0]
    a = gram(vectorize(doc, NormalizationStrategy.fix(1)))
    b = gram(vectorize(doc, NormalizationStrategy.raw()))
    first = mantel_between_normalizations(doc, NormalizationStrategy.fix(1), NormalizationStrategy.raw(), 99, 1)
    assert first.r_observed == pytest.approx(textbook_pearson(a.tolist(), b.tolist()), abs=1e-12)
    assert documents("en")[0] == doc
    assert mantel_between_normalizations(doc, NormalizationStrategy.fix(1), NormalizationStrategy.raw(), 99, 1) == first


sym = st.integers(3, 7).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.integers(-5, 5).map(float)))


@settings(max_examples=60, deadline=None)
@given(sym, sym, st.randoms(use_true_random=False))
def test_pearson_properties(a, b, rnd):
    n = min(len(a), len(b))
    a, b = a[:n, :n] + a[:n, :n].T, b[:n, :n] + b[:n, :n].T
    try:
        r = pearson_lower_triangle(a, b)
    except DegenerateMatrixError:
        return
    assert -1.0 <= r <= 1.0
    assert pearson_lower_triangle(b, a) == pytest.approx(r, abs=1e-12)
    perm = list(range(n))
    rnd.shuffle(perm)
    pa, pb = a[np.ix_(perm, perm)], b[np.ix_(perm, perm)]
    assert pearson_lower_triangle(pa, pb) == pytest.approx(r, abs=1e-12)
    res = mantel_test(a, b, 19, seed=0)
    assert 1 / 20 <= res.p_value <= 1.0


# -- letters and lengths -------------------------------------------------------------

def test_letter_ranking_trivial():
    doc = document_from_sentences("d", "en", [["sing", "song"], ["dog", "sing"]])
    ranking = letter_ranking([doc])
    assert ranking.counts == {"s": 2, "d": 1}
    assert ranking.ranked == [("s", 2), ("d", 1)]
    assert letter_ranking([]).ranked == []


def test_letter_ranking_ties_alphabetical():
    doc = document_from_sentences("d", "en", [["bee", "ant", "cat"]])
    assert [l for l, _ in letter_ranking([doc]).ranked] == ["a", "b", "c"]


@pytest.mark.parametrize("lang", LANGS)
def test_fixture_letter_ranking(lang):
    docs = documents(lang)
    types = set()
    for d in docs:
        for s in d.sentences:
            types.update(s.tokens)
    ranking = letter_ranking(docs)
    by_letter = {}
    for t in types:
        by_letter[t[0]] = by_letter.get(t[0], 0) + 1
    assert ranking.counts == by_letter
    assert ranking.total == len(types)
    counts = [c for _, c in ranking.ranked]
    assert counts == sorted(counts, reverse=True)


def test_lengths_trivial():
    doc = document_from_sentences("d", "en", [["aa", "aa", "aaa"]])
    dist = word_length_distribution([doc])
    assert dist.histogram == {2: 2, 3: 1}
    assert dist.mean == pytest.approx(7 / 3)
    assert dist.mode == 2
    assert max(dist.curve.values()) == 1.0
    with pytest.raises(ValueError, match="empty corpus"):
        word_length_distribution([])


@pytest.mark.parametrize("lang", LANGS)
def test_fixture_lengths(lang):
    docs = documents(lang)
    lengths = [len(t) for d in docs for s in d.sentences for t in s.tokens]
    dist = word_length_distribution(docs)
    assert dist.mean == pytest.approx(sum(lengths) / len(lengths), abs=1e-12)
    top = max(lengths.count(k) for k in set(lengths))
    assert dist.mode == min(k for k in set(lengths) if lengths.count(k) == top)
    fix1 = word_length_distribution(docs, NormalizationStrategy.fix(1))
    assert fix1.mean == 1.0 and fix1.histogram.keys() == {1}
    for n in (2, 5):
        assert word_length_distribution(docs, parse_strategy(f"fix:{n}")).max_length <= n


@settings(max_examples=60, deadline=None)
@given(sym)
def test_self_correlation_is_exactly_one(a):
    a = a + a.T
    try:
        assert pearson_lower_triangle(a, a) == 1.0
    except DegenerateMatrixError:
        pass
