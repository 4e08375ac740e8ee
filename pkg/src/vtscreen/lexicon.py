"""Embedding-neighborhood scorer.

Seed words for a class are expanded with every vocabulary token whose
cosine distance to a seed falls under a data-driven threshold (the
largest distance among the closest ``pair_budget`` seed/vocabulary
pairs). An article's representative words are the top-k distinct abstract
tokens by maximum similarity to any extended seed, and the article score
for the class is the mean of those similarities. The class with the
higher score wins.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .corpus import Label
from .textprep import TokenSequence


class EmbeddingError(ValueError):
    pass


class EmbeddingTable:
    """Dense token embeddings with a fixed dimension.

    Immutable after construction. Tokens are lowercase and unique; rows
    live in one matrix so similarity kernels can run over contiguous
    memory.
    """

    def __init__(self, tokens: Sequence[str], matrix: np.ndarray):
        if len(tokens) != matrix.shape[0]:
            raise EmbeddingError("token list and matrix row count differ")
        self.tokens = tuple(tokens)
        self.matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        self._row: dict[str, int] = {}
        for i, token in enumerate(self.tokens):
            if token in self._row:
                raise EmbeddingError(f"duplicate token {token!r} in embedding table")
            self._row[token] = i

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._row

    def row(self, token: str) -> int:
        return self._row[token]

    def vector(self, token: str) -> np.ndarray:
        return self.matrix[self._row[token]]


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Read a text embedding file: ``token v1 v2 ... vd`` per line, no header.

    Tokens are lowercased on load. Fails on ragged rows (naming the token),
    non-numeric fields (naming the line), and empty files.
    """
    tokens: list[str] = []
    rows: list[list[float]] = []
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token = parts[0].lower()
            try:
                values = [float(x) for x in parts[1:]]
            except ValueError:
                raise EmbeddingError(f"{path}:{lineno}: non-numeric embedding value") from None
            if not values:
                raise EmbeddingError(f"{path}:{lineno}: token {token!r} has no values")
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise EmbeddingError(
                    f"{path}:{lineno}: token {token!r} has {len(values)} values, expected {dim}"
                )
            tokens.append(token)
            rows.append(values)
    if not tokens:
        raise EmbeddingError(f"{path}: empty embedding table")
    return EmbeddingTable(tokens, np.array(rows, dtype=np.float64))


@dataclass(frozen=True)
class SeedConfig:
    """Seed words per class plus expansion and ranking parameters."""

    vaccine_seeds: tuple[str, ...]
    therapeutics_seeds: tuple[str, ...]
    pair_budget: int = 1000
    k: int = 50

    def __post_init__(self):
        if not self.vaccine_seeds or not self.therapeutics_seeds:
            raise EmbeddingError("seed lists must be non-empty")
        if self.pair_budget < 1:
            raise EmbeddingError("pair_budget must be >= 1")
        if self.k < 1:
            raise EmbeddingError("k must be >= 1")


@dataclass(frozen=True)
class ExtendedSeeds:
    """Seed set after neighborhood expansion; always contains the seeds."""

    tokens: frozenset[str]
    threshold: float


def expand_seeds(table: EmbeddingTable, seeds: Sequence[str], pair_budget: int = 1000) -> ExtendedSeeds:
    """Admit vocabulary tokens within the learned cosine-distance threshold.

    All (seed, non-seed vocabulary token) pairs are ranked by cosine
    distance (1 - similarity); the threshold is the distance of the pair at
    position min(pair_budget, pair count). A token joins the extended set
    when its distance to the closest seed is at most the threshold. With no
    candidate pairs the threshold degenerates to infinity and the set is
    just the seeds.
    """
    seeds = list(dict.fromkeys(seeds))
    seed_set = set(seeds)
    in_table = [s for s in seeds if s in table]
    if not in_table:
        missing = ", ".join(s for s in seeds if s not in table)
        raise EmbeddingError(f"no seed present in embedding table (missing: {missing})")

    candidates = [t for t in table.tokens if t not in seed_set]
    if not candidates:
        return ExtendedSeeds(tokens=frozenset(seed_set), threshold=math.inf)

    cand_matrix = table.matrix[[table.row(t) for t in candidates]]
    seed_matrix = table.matrix[[table.row(s) for s in in_table]]
    sims = kernels.cosine_matrix(cand_matrix, seed_matrix)

    distances = sorted(1.0 - s for row in sims for s in row)
    threshold = distances[min(pair_budget, len(distances)) - 1]

    extended = set(seed_set)
    for i, token in enumerate(candidates):
        min_dist = 1.0 - max(sims[i])
        if min_dist <= threshold:
            extended.add(token)
    return ExtendedSeeds(tokens=frozenset(extended), threshold=threshold)


def representative_words(
    abstract_tokens: TokenSequence,
    ext: ExtendedSeeds,
    table: EmbeddingTable,
    k: int,
) -> list[tuple[str, float]]:
    """Top-k distinct in-table abstract tokens by similarity to the seed set.

    Similarity of a token is its maximum cosine to any in-table extended
    seed. Output is sorted by similarity descending, ties broken by token
    order, and never longer than k.
    """
    words = sorted(set(t for t in abstract_tokens if t in table))
    seed_rows = [table.row(s) for s in sorted(ext.tokens) if s in table]
    if not words or not seed_rows:
        return []
    cand_matrix = table.matrix[[table.row(w) for w in words]]
    seed_matrix = table.matrix[seed_rows]
    sims = kernels.max_cosine_rows(cand_matrix, seed_matrix)
    ranked = sorted(zip(words, sims), key=lambda ws: (-ws[1], ws[0]))
    return [(w, float(s)) for w, s in ranked[:k]]


def score_article(
    abstract_tokens: TokenSequence,
    vaccine_ext: ExtendedSeeds,
    thera_ext: ExtendedSeeds,
    table: EmbeddingTable,
    k: int,
    occurrence_weighted: bool = False,
) -> tuple[float, float]:
    """Per-class article scores: mean similarity of the representative words.

    By default each distinct representative word counts once; with
    ``occurrence_weighted`` every occurrence in the abstract contributes.
    An empty representative list scores 0.
    """
    counts = Counter(abstract_tokens) if occurrence_weighted else None

    def mean_score(ext: ExtendedSeeds) -> float:
        reps = representative_words(abstract_tokens, ext, table, k)
        if not reps:
            return 0.0
        if counts is None:
            return sum(s for _, s in reps) / len(reps)
        total = sum(counts[w] for w, _ in reps)
        return sum(s * counts[w] for w, s in reps) / total

    return mean_score(vaccine_ext), mean_score(thera_ext)


def label(v_score: float, t_score: float, min_score: float | None = None) -> Label:
    """Argmax of the two class scores; ties go to Vaccine.

    When ``min_score`` is set and both scores fall below it, the article is
    labeled Other; by default the scorer never outputs Other.
    """
    if min_score is not None and v_score < min_score and t_score < min_score:
        return Label.OTHER
    return Label.VACCINE if v_score >= t_score else Label.THERAPEUTICS
