"""Decision rules over externally produced model scores, plus prediction IO.

Three rule families turn raw scores into labels:

* next-sentence probabilities against the two class passages, gated by a
  high threshold (default 0.999, inclusive);
* a binary therapeutics probability that refines any positive
  next-sentence label into Therapeutics or Vaccine;
* 0-to-5 segment similarities, reduced per class to the mean of the top n
  segments and compared against a 2.0 threshold.

The raw scores come from interchange TSVs; this module never runs a
model.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Label


class ScoreError(ValueError):
    pass


@dataclass(frozen=True)
class NspRawScores:
    """Next-sentence probabilities for the vaccine and therapeutics passages."""

    p_vaccine: float
    p_therapeutics: float

    def __post_init__(self):
        for p in (self.p_vaccine, self.p_therapeutics):
            if not 0.0 <= p <= 1.0:
                raise ScoreError(f"probability {p} outside [0, 1]")


@dataclass(frozen=True)
class ChRawScore:
    """Binary therapeutics probability."""

    p_therapeutics: float

    def __post_init__(self):
        if not 0.0 <= self.p_therapeutics <= 1.0:
            raise ScoreError(f"probability {self.p_therapeutics} outside [0, 1]")


@dataclass(frozen=True)
class StsRawScores:
    """Per-class text-segment similarity scores, each in [0, 5]."""

    vaccine_segment_scores: tuple[float, ...]
    therapeutics_segment_scores: tuple[float, ...]

    def __post_init__(self):
        for s in self.vaccine_segment_scores + self.therapeutics_segment_scores:
            if not 0.0 <= s <= 5.0:
                raise ScoreError(f"segment score {s} outside [0, 5]")


def nsp_label(scores: NspRawScores, threshold: float = 0.999) -> Label:
    """Label from next-sentence probabilities.

    Both probabilities at or above the threshold: the higher one wins
    (equal values go to Vaccine). Exactly one at or above: that class.
    Neither: Other.
    """
    v_pass = scores.p_vaccine >= threshold
    t_pass = scores.p_therapeutics >= threshold
    if v_pass and t_pass:
        return Label.VACCINE if scores.p_vaccine >= scores.p_therapeutics else Label.THERAPEUTICS
    if v_pass:
        return Label.VACCINE
    if t_pass:
        return Label.THERAPEUTICS
    return Label.OTHER


def ch_combine(nsp: Label, ch: ChRawScore, cut: float = 0.5) -> Label:
    """Refine a positive next-sentence label with the binary therapeutics score.

    Articles the gate labeled Other stay Other. Positive articles become
    Therapeutics when the probability reaches ``cut``, otherwise Vaccine.
    """
    if nsp is Label.OTHER:
        return Label.OTHER
    return Label.THERAPEUTICS if ch.p_therapeutics >= cut else Label.VACCINE


def _top_n_mean(scores: Sequence[float], n: int) -> float:
    if n < 1:
        raise ScoreError(f"top-n must be >= 1, got {n}")
    if not scores:
        return 0.0
    top = sorted(scores, reverse=True)[:n]
    return sum(top) / len(top)


def sts_label(scores: StsRawScores, n: int = 3, threshold: float = 2.0) -> Label:
    """Label from segment similarities.

    Each class scores the mean of its top n segments (all of them when
    fewer than n exist; 0 with none at all). Both at or above the
    threshold: the higher wins, ties to Vaccine. One: that class.
    Neither: Other.
    """
    v_score = _top_n_mean(scores.vaccine_segment_scores, n)
    t_score = _top_n_mean(scores.therapeutics_segment_scores, n)
    v_pass = v_score >= threshold
    t_pass = t_score >= threshold
    if v_pass and t_pass:
        return Label.VACCINE if v_score >= t_score else Label.THERAPEUTICS
    if v_pass:
        return Label.VACCINE
    if t_pass:
        return Label.THERAPEUTICS
    return Label.OTHER


def sts_class_scores(scores: StsRawScores, n: int = 3) -> tuple[float, float]:
    """(vaccine, therapeutics) top-n mean scores, for reporting."""
    return (
        _top_n_mean(scores.vaccine_segment_scores, n),
        _top_n_mean(scores.therapeutics_segment_scores, n),
    )


def _parse_float(path, lineno: int, text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ScoreError(f"{path}:{lineno}: {what} {text!r} is not a number") from None


def load_nsp_scores(path: str | Path) -> dict[str, NspRawScores]:
    """Read article_id<TAB>p_vaccine<TAB>p_therapeutics lines."""
    out: dict[str, NspRawScores] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ScoreError(f"{path}:{lineno}: expected 3 tab-separated fields")
            article_id = parts[0].strip()
            if article_id in out:
                raise ScoreError(f"{path}:{lineno}: duplicate article id {article_id!r}")
            p_vaccine = _parse_float(path, lineno, parts[1], "probability")
            p_therapeutics = _parse_float(path, lineno, parts[2], "probability")
            try:
                out[article_id] = NspRawScores(p_vaccine=p_vaccine, p_therapeutics=p_therapeutics)
            except ScoreError as exc:
                raise ScoreError(f"{path}:{lineno}: {exc}") from None
    return out


def load_ch_scores(path: str | Path) -> dict[str, ChRawScore]:
    """Read article_id<TAB>p_therapeutics lines."""
    out: dict[str, ChRawScore] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ScoreError(f"{path}:{lineno}: expected 2 tab-separated fields")
            article_id = parts[0].strip()
            if article_id in out:
                raise ScoreError(f"{path}:{lineno}: duplicate article id {article_id!r}")
            p = _parse_float(path, lineno, parts[1], "probability")
            try:
                out[article_id] = ChRawScore(p)
            except ScoreError as exc:
                raise ScoreError(f"{path}:{lineno}: {exc}") from None
    return out


def load_sts_scores(path: str | Path) -> dict[str, StsRawScores]:
    """Read article_id<TAB>class<TAB>comma-separated segment scores lines.

    Each article may have one line per class; a missing class leaves that
    class with no segments (scored 0 by the rule).
    """
    vaccine: dict[str, tuple[float, ...]] = {}
    thera: dict[str, tuple[float, ...]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ScoreError(f"{path}:{lineno}: expected 3 tab-separated fields")
            article_id = parts[0].strip()
            cls = parts[1].strip().lower()
            if cls not in ("vaccine", "therapeutics"):
                raise ScoreError(f"{path}:{lineno}: unknown class {parts[1]!r}")
            target = vaccine if cls == "vaccine" else thera
            if article_id in target:
                raise ScoreError(f"{path}:{lineno}: duplicate {cls} row for {article_id!r}")
            values = tuple(
                _parse_float(path, lineno, x, "segment score") for x in parts[2].split(",") if x.strip()
            )
            if not values:
                raise ScoreError(f"{path}:{lineno}: no segment scores")
            for s in values:
                if not 0.0 <= s <= 5.0:
                    raise ScoreError(f"{path}:{lineno}: segment score {s} outside [0, 5]")
            target[article_id] = values
    out: dict[str, StsRawScores] = {}
    for article_id in sorted(set(vaccine) | set(thera)):
        out[article_id] = StsRawScores(
            vaccine_segment_scores=vaccine.get(article_id, ()),
            therapeutics_segment_scores=thera.get(article_id, ()),
        )
    return out


Prediction = tuple[Label, float | None]


def load_predictions(path: str | Path) -> dict[str, Prediction]:
    """Read article_id<TAB>label[<TAB>score] lines; insertion order preserved."""
    out: dict[str, Prediction] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise ScoreError(f"{path}:{lineno}: expected article_id<TAB>label[<TAB>score]")
            article_id = parts[0].strip()
            if article_id in out:
                raise ScoreError(f"{path}:{lineno}: duplicate article id {article_id!r}")
            label_str = parts[1].strip().lower()
            if label_str not in ("vaccine", "therapeutics", "other"):
                raise ScoreError(f"{path}:{lineno}: unknown label {parts[1]!r}")
            score = _parse_float(path, lineno, parts[2], "score") if len(parts) == 3 else None
            out[article_id] = (Label(label_str), score)
    return out


def write_predictions(predictions: Mapping[str, Prediction], path: str | Path) -> None:
    """Write predictions in the TSV interchange format, 6-decimal scores."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for article_id, (label, score) in predictions.items():
            if score is None:
                fh.write(f"{article_id}\t{label.value}\n")
            else:
                fh.write(f"{article_id}\t{label.value}\t{score:.6f}\n")
