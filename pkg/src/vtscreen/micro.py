"""Query-pair cosine scorer.

Representative vaccine queries and therapeutics queries are crossed into
query pairs. For one article (tf-idf vector a) and one pair (v, t):

    vs = cos(a, v)
    ts = cos(a, t)
    os = 0.5 * (sqrt((1 - vs)(1 - ts)) - sqrt((1 + vs)(1 + ts)))

os equals -cos((alpha + beta) / 2) for the angles alpha, beta behind the
two cosines, so it is large only when the article points away from both
query directions. The three scores are accumulated over all pairs and the
argmax class wins. Article text here is title + abstract (no journal).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .corpus import Label
from .textprep import SparseVector, TfIdfModel, TokenSequence, cosine, tokenize, vectorize


class QueryError(ValueError):
    pass


@dataclass(frozen=True)
class QuerySet:
    """Representative query texts per positive class; both lists non-empty."""

    vaccine_queries: tuple[str, ...]
    therapeutics_queries: tuple[str, ...]

    def __post_init__(self):
        if not self.vaccine_queries or not self.therapeutics_queries:
            raise QueryError("both query lists must be non-empty")

    @property
    def n_pairs(self) -> int:
        return len(self.vaccine_queries) * len(self.therapeutics_queries)


@dataclass(frozen=True)
class MicroScores:
    """Accumulated scores for one article over all query pairs."""

    vs: float
    ts: float
    os: float
    n_pairs: int


def other_score(vs: float, ts: float) -> float:
    """Negative-class score for one pair of cosines, each in [-1, 1]."""
    return kernels.other_score(vs, ts)


def pair_scores(a: SparseVector, v: SparseVector, t: SparseVector) -> tuple[float, float, float]:
    """(vs, ts, os) for a single query pair; zero vectors score 0 cosine."""
    vs = cosine(a, v)
    ts = cosine(a, t)
    return vs, ts, other_score(vs, ts)


def article_text(title: str, abstract: str) -> str:
    """Scoring text for this scorer: title and abstract only."""
    return f"{title.strip()} {abstract.strip()}".strip()


def fit_model(
    article_token_seqs: list[TokenSequence],
    queries: QuerySet,
    stopwords: frozenset[str] | None = None,
) -> TfIdfModel:
    """Fit tf-idf over the articles plus the query texts as extra documents.

    Folding the queries into the fitting corpus keeps their terms
    in-vocabulary regardless of the articles' wording.
    """
    from .textprep import fit_tfidf

    docs = list(article_token_seqs)
    for q in queries.vaccine_queries + queries.therapeutics_queries:
        docs.append(tokenize(q, stopwords))
    return fit_tfidf(docs)


class MicroScorer:
    """Precomputes query vectors once so per-article scoring stays cheap."""

    def __init__(self, model: TfIdfModel, queries: QuerySet, stopwords: frozenset[str] | None = None):
        self.model = model
        self.queries = queries
        self._v_vecs = [vectorize(model, tokenize(q, stopwords)) for q in queries.vaccine_queries]
        self._t_vecs = [vectorize(model, tokenize(q, stopwords)) for q in queries.therapeutics_queries]

    def score(self, article_tokens: TokenSequence) -> MicroScores:
        a = vectorize(self.model, article_tokens)
        cos_v = np.array([cosine(a, v) for v in self._v_vecs], dtype=np.float64)
        cos_t = np.array([cosine(a, t) for t in self._t_vecs], dtype=np.float64)
        vs, ts, osum = kernels.pair_accumulate(cos_v, cos_t)
        return MicroScores(vs=vs, ts=ts, os=osum, n_pairs=len(cos_v) * len(cos_t))


def score_article(article_tokens: TokenSequence, queries: QuerySet, model: TfIdfModel) -> MicroScores:
    """Accumulate (vs, ts, os) over the Cartesian product of query pairs."""
    return MicroScorer(model, queries).score(article_tokens)


def label(scores: MicroScores) -> Label:
    """Argmax class for accumulated scores.

    An exactly all-zero triple means no evidence at all and maps to Other;
    any other tie resolves by the fixed priority Vaccine, Therapeutics,
    Other.
    """
    if scores.vs == 0.0 and scores.ts == 0.0 and scores.os == 0.0:
        return Label.OTHER
    best = max(scores.vs, scores.ts, scores.os)
    if scores.vs == best:
        return Label.VACCINE
    if scores.ts == best:
        return Label.THERAPEUTICS
    return Label.OTHER
