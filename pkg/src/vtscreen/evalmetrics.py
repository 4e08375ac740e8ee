"""Evaluation: positive-class P/R/F, Cohen's kappa, and the 2x2 category
breakdown of articles by (gold positivity) x (task-lexicon presence).

Categories partition the analyzed set:

    1: gold-positive and lexicon term present
    2: gold-negative and lexicon term present
    3: gold-positive and lexicon term absent
    4: gold-negative and lexicon term absent

Per-system correct counts within each category expose where a scorer's
decisions actually come from (term matching vs anything deeper).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Article, Corpus, Label, compose_text
from .textprep import tokenize


class EvalError(ValueError):
    pass


LABEL_ORDER = (Label.VACCINE, Label.THERAPEUTICS, Label.OTHER)
_LABEL_INDEX = {label: i for i, label in enumerate(LABEL_ORDER)}


@dataclass(frozen=True)
class ConfusionMatrix:
    """3x3 counts indexed (gold, predicted) in LABEL_ORDER."""

    counts: np.ndarray

    def __post_init__(self):
        if self.counts.shape != (3, 3) or (self.counts < 0).any():
            raise EvalError("confusion matrix must be 3x3 with non-negative counts")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def count(self, gold: Label, predicted: Label) -> int:
        return int(self.counts[_LABEL_INDEX[gold], _LABEL_INDEX[predicted]])


def confusion(gold: Mapping[str, Label], predicted: Mapping[str, Label]) -> ConfusionMatrix:
    """Cross-tabulate gold against predicted labels over identical id sets."""
    if set(gold) != set(predicted):
        diff = sorted(set(gold).symmetric_difference(set(predicted)))
        raise EvalError("gold and predictions cover different articles: " + ", ".join(diff))
    counts = np.zeros((3, 3), dtype=np.int64)
    for article_id, g in gold.items():
        counts[_LABEL_INDEX[g], _LABEL_INDEX[predicted[article_id]]] += 1
    return ConfusionMatrix(counts)


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def _prf(tp: int, fp: int, fn: int) -> PRF:
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return PRF(p, r, f)


@dataclass(frozen=True)
class PositiveMetrics:
    """P/R/F for the positive classes, plus micro and macro aggregates."""

    vaccine: PRF
    therapeutics: PRF
    micro: PRF
    macro: PRF


def positive_prf(matrix: ConfusionMatrix) -> PositiveMetrics:
    """Per-class and aggregated metrics for Vaccine and Therapeutics.

    Micro pools tp/fp/fn over the two positive classes; macro is their
    unweighted mean. Degenerate denominators yield 0.
    """
    counts = matrix.counts
    per_class: dict[Label, PRF] = {}
    pooled_tp = pooled_fp = pooled_fn = 0
    for label in (Label.VACCINE, Label.THERAPEUTICS):
        i = _LABEL_INDEX[label]
        tp = int(counts[i, i])
        fp = int(counts[:, i].sum()) - tp
        fn = int(counts[i, :].sum()) - tp
        per_class[label] = _prf(tp, fp, fn)
        pooled_tp += tp
        pooled_fp += fp
        pooled_fn += fn
    v = per_class[Label.VACCINE]
    t = per_class[Label.THERAPEUTICS]
    macro = PRF(
        (v.precision + t.precision) / 2,
        (v.recall + t.recall) / 2,
        (v.f1 + t.f1) / 2,
    )
    return PositiveMetrics(
        vaccine=v,
        therapeutics=t,
        micro=_prf(pooled_tp, pooled_fp, pooled_fn),
        macro=macro,
    )


def cohen_kappa(a: Mapping[str, Label], b: Mapping[str, Label]) -> float:
    """Chance-corrected agreement kappa = (p_o - p_e) / (1 - p_e).

    Requires identical non-empty id sets. When expected agreement is
    exactly 1 (both labelings constant and equal) kappa is 1 by
    convention.
    """
    if set(a) != set(b):
        diff = sorted(set(a).symmetric_difference(set(b)))
        raise EvalError("labelings cover different articles: " + ", ".join(diff))
    if not a:
        raise EvalError("cannot compute kappa on an empty labeling")
    n = len(a)
    agree = 0
    counts_a = {label: 0 for label in LABEL_ORDER}
    counts_b = {label: 0 for label in LABEL_ORDER}
    for article_id, la in a.items():
        lb = b[article_id]
        if la == lb:
            agree += 1
        counts_a[la] += 1
        counts_b[lb] += 1
    p_o = agree / n
    p_e = sum((counts_a[l] / n) * (counts_b[l] / n) for l in LABEL_ORDER)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


class LexiconSpec:
    """Task lexicon: single tokens and multi-token phrases, matched whole."""

    def __init__(self, terms: Sequence[str]):
        tokens: set[str] = set()
        phrases: set[tuple[str, ...]] = set()
        for term in terms:
            parts = tuple(tokenize(term))
            if not parts:
                continue
            if len(parts) == 1:
                tokens.add(parts[0])
            else:
                phrases.add(parts)
        if not tokens and not phrases:
            raise EvalError("lexicon has no usable terms")
        self.tokens = frozenset(tokens)
        self.phrases = frozenset(phrases)

    @classmethod
    def from_file(cls, path: str | Path) -> "LexiconSpec":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls([line.strip() for line in lines if line.strip()])


def lexicon_present(article: Article, lexicon: LexiconSpec) -> bool:
    """Whole-token (or consecutive-token phrase) lexicon match in the article text."""
    tokens = tokenize(compose_text(article))
    if any(t in lexicon.tokens for t in tokens):
        return True
    for phrase in lexicon.phrases:
        span = len(phrase)
        for i in range(len(tokens) - span + 1):
            if tuple(tokens[i : i + span]) == phrase:
                return True
    return False


def categorize(gold: Label, present: bool) -> int:
    """Category number from gold positivity and lexicon presence."""
    if gold.is_positive:
        return 1 if present else 3
    return 2 if present else 4


@dataclass(frozen=True)
class CategoryTable:
    """Category assignment plus per-system correct counts."""

    assignment: dict[str, int]
    totals: dict[int, int]
    correct: dict[tuple[str, int], int]
    systems: tuple[str, ...]

    def percentage(self, category: int) -> float:
        total = sum(self.totals.values())
        return 100.0 * self.totals[category] / total if total else 0.0


def category_report(
    corpus: Corpus,
    gold: Mapping[str, Label],
    predictions: Mapping[str, Mapping[str, Label]],
    lexicon: LexiconSpec,
) -> CategoryTable:
    """Assign every gold article to a category and count correct predictions.

    Every gold id must exist in the corpus and in every prediction map.
    """
    missing = sorted(a for a in gold if a not in corpus)
    if missing:
        raise EvalError("gold ids missing from corpus: " + ", ".join(missing))
    for system, preds in predictions.items():
        absent = sorted(a for a in gold if a not in preds)
        if absent:
            raise EvalError(f"system {system!r} lacks predictions for: " + ", ".join(absent))

    assignment: dict[str, int] = {}
    totals = {1: 0, 2: 0, 3: 0, 4: 0}
    systems = tuple(predictions)
    correct = {(system, cat): 0 for system in systems for cat in (1, 2, 3, 4)}
    for article_id, gold_label in gold.items():
        cat = categorize(gold_label, lexicon_present(corpus[article_id], lexicon))
        assignment[article_id] = cat
        totals[cat] += 1
        for system in systems:
            if predictions[system][article_id] == gold_label:
                correct[(system, cat)] += 1
    return CategoryTable(assignment=assignment, totals=totals, correct=correct, systems=systems)


MetricsRows = Sequence[tuple[str, PRF]]


def render_report(
    metrics: MetricsRows,
    categories: CategoryTable | None = None,
    fmt: str = "markdown",
) -> str:
    """Render metrics (and optionally the category table) as markdown or CSV.

    Output is deterministic: identical inputs produce identical bytes.
    Numbers are shown with two decimals.
    """
    if fmt == "markdown":
        return _render_markdown(metrics, categories)
    if fmt == "csv":
        return _render_csv(metrics, categories)
    raise EvalError(f"unknown report format {fmt!r}")


def _render_markdown(metrics: MetricsRows, categories: CategoryTable | None) -> str:
    lines = ["# Screening report", "", "## Positive-class metrics", ""]
    lines.append("| System | Precision | Recall | F-measure |")
    lines.append("| --- | --- | --- | --- |")
    for name, prf in metrics:
        lines.append(f"| {name} | {prf.precision:.2f} | {prf.recall:.2f} | {prf.f1:.2f} |")
    if categories is not None:
        lines.extend(["", "## Category analysis", ""])
        header = "| Category | Total | % |"
        rule = "| --- | --- | --- |"
        for system in categories.systems:
            header += f" {system} |"
            rule += " --- |"
        lines.append(header)
        lines.append(rule)
        for cat in (1, 2, 3, 4):
            row = f"| {cat} | {categories.totals[cat]} | {categories.percentage(cat):.2f} |"
            for system in categories.systems:
                row += f" {categories.correct[(system, cat)]} |"
            lines.append(row)
    return "\n".join(lines) + "\n"


def _render_csv(metrics: MetricsRows, categories: CategoryTable | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["system", "precision", "recall", "f_measure"])
    for name, prf in metrics:
        writer.writerow([name, f"{prf.precision:.2f}", f"{prf.recall:.2f}", f"{prf.f1:.2f}"])
    if categories is not None:
        writer.writerow([])
        writer.writerow(["category", "total", "percent", *categories.systems])
        for cat in (1, 2, 3, 4):
            writer.writerow(
                [
                    cat,
                    categories.totals[cat],
                    f"{categories.percentage(cat):.2f}",
                    *(categories.correct[(system, cat)] for system in categories.systems),
                ]
            )
    return buf.getvalue()
