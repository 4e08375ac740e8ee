"""Bundled default configuration resources.

Default query texts, seed words, relevance passages, and the task
lexicon ship with the package so every command runs out of the box; all
of them can be overridden with files of the same formats.
"""

from __future__ import annotations

import json
from importlib import resources

from .evalmetrics import LexiconSpec
from .lexicon import SeedConfig
from .micro import QuerySet


def _read_text(name: str) -> str:
    return resources.files("vtscreen.resources").joinpath(name).read_text(encoding="utf-8")


def default_queries() -> QuerySet:
    data = json.loads(_read_text("queries.json"))
    return QuerySet(
        vaccine_queries=tuple(data["vaccine_queries"]),
        therapeutics_queries=tuple(data["therapeutics_queries"]),
    )


def default_seed_config() -> SeedConfig:
    data = json.loads(_read_text("seeds.json"))
    return SeedConfig(
        vaccine_seeds=tuple(data["vaccine_seeds"]),
        therapeutics_seeds=tuple(data["therapeutics_seeds"]),
        pair_budget=int(data["pair_budget"]),
        k=int(data["k"]),
    )


def default_lexicon() -> LexiconSpec:
    lines = _read_text("lexicon.txt").splitlines()
    return LexiconSpec([line.strip() for line in lines if line.strip()])


def relevance_passages() -> dict[str, str]:
    """Hand-written vaccine / therapeutics passages used by score exporters."""
    return json.loads(_read_text("passages.json"))


def negative_query_texts() -> list[str]:
    """Queries unrelated to either positive class, for weak negative sampling."""
    return json.loads(_read_text("negative_queries.json"))["negative_queries"]
