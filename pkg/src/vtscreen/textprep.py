"""Tokenization, sentence segmentation, tf-idf, and cosine similarity.

Every scorer goes through these primitives, so their behavior is pinned
exactly:

* tokens are maximal runs of letters or digits, lowercased, no stemming;
* sentences split after '.', '?' or '!' followed by whitespace and an
  uppercase letter;
* idf(t) = ln((1 + N) / (1 + df(t))) + 1, tf = raw count;
* cosine of non-negative sparse vectors, clamped into [0, 1], with 0 for
  zero-norm inputs.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels

TokenSequence = list[str]

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_SENTENCE_END = ".?!"


class TextPrepError(ValueError):
    """Raised on contract violations in this module."""


def tokenize(text: str, stopwords: frozenset[str] | set[str] | None = None) -> TokenSequence:
    """Lowercase ``text`` and split on every non-alphanumeric character.

    Empty fragments are dropped. When ``stopwords`` is given, tokens in it
    are removed after lowercasing. No stemming or other normalization.
    """
    tokens = _TOKEN_RE.findall(text.lower())
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: one lowercase token per line, blanks ignored."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(line.strip() for line in lines if line.strip())


def split_sentences(text: str) -> list[str]:
    """Split ``text`` into sentence segments.

    A split point is a '.', '?' or '!' followed by at least one whitespace
    character and an uppercase letter. Segments are trimmed and empty ones
    dropped; joining the segments (modulo the consumed separators) covers
    the input.
    """
    segments: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _SENTENCE_END:
            j = i + 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k > j and k < n and text[k].isupper():
                segments.append(text[start:j])
                start = k
                i = k
                continue
        i += 1
    segments.append(text[start:])
    return [s for s in (seg.strip() for seg in segments) if s]


@dataclass(frozen=True)
class SparseVector:
    """Sparse non-negative vector keyed by term id.

    ``ids`` is strictly increasing and parallel to ``weights``; zero
    weights are never stored.
    """

    ids: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_entries(cls, entries: dict[int, float]) -> "SparseVector":
        for w in entries.values():
            if w < 0:
                raise TextPrepError("sparse vector weights must be non-negative")
        items = sorted((i, w) for i, w in entries.items() if w != 0)
        ids = np.array([i for i, _ in items], dtype=np.int64)
        weights = np.array([w for _, w in items], dtype=np.float64)
        return cls(ids=ids, weights=weights)

    @property
    def entries(self) -> dict[int, float]:
        return {int(i): float(w) for i, w in zip(self.ids, self.weights)}

    def __len__(self) -> int:
        return len(self.ids)


_EMPTY_VECTOR = SparseVector(
    ids=np.empty(0, dtype=np.int64), weights=np.empty(0, dtype=np.float64)
)


@dataclass(frozen=True)
class TfIdfModel:
    """Fitted vocabulary and idf weights.

    Immutable after fitting; ``vectorize`` and ``cosine`` are pure
    functions over it and safe for concurrent use.
    """

    vocabulary: dict[str, int]
    idf: np.ndarray
    n_docs: int

    def term_id(self, term: str) -> int | None:
        return self.vocabulary.get(term)


def fit_tfidf(documents: Sequence[TokenSequence]) -> TfIdfModel:
    """Fit vocabulary and smoothed idf over tokenized documents.

    idf(t) = ln((1 + N) / (1 + df(t))) + 1 with N the number of documents
    and df the number of documents containing t, so idf is always > 0.
    """
    docs = list(documents)
    if not any(docs):
        raise TextPrepError("all documents empty; nothing to fit")
    n_docs = len(docs)
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(doc))
    vocabulary = {term: tid for tid, term in enumerate(sorted(df))}
    idf = np.empty(len(vocabulary), dtype=np.float64)
    for term, tid in vocabulary.items():
        idf[tid] = np.log((1.0 + n_docs) / (1.0 + df[term])) + 1.0
    return TfIdfModel(vocabulary=vocabulary, idf=idf, n_docs=n_docs)


def vectorize(model: TfIdfModel, tokens: Iterable[str]) -> SparseVector:
    """Raw-count times idf for every in-vocabulary token; OOV tokens ignored."""
    counts: Counter[int] = Counter()
    vocab = model.vocabulary
    for token in tokens:
        tid = vocab.get(token)
        if tid is not None:
            counts[tid] += 1
    if not counts:
        return _EMPTY_VECTOR
    ids = np.array(sorted(counts), dtype=np.int64)
    weights = np.array([counts[int(i)] * model.idf[int(i)] for i in ids], dtype=np.float64)
    return SparseVector(ids=ids, weights=weights)


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine similarity in [0, 1]; 0.0 when either vector is empty.

    Clamping guards against rounding drift just above 1, which would
    otherwise poison downstream square roots of (1 - cosine) terms.
    """
    raw = kernels.sparse_cosine(a.ids, a.weights, b.ids, b.weights)
    if raw <= 0.0:
        return 0.0
    return min(raw, 1.0)
