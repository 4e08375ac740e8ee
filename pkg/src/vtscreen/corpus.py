"""Article ingestion, gold labels, and weak-label set construction.

A corpus record is (id, title, abstract, journal). Ingestion keeps only
records where all three text fields are non-empty after trimming, since
the scorers need every field. Weak labels are derived from ranked search
result lists: positives from class-specific lists (rank decides overlaps),
negatives from unrelated-query lists minus any positive.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, TextIO

from .detrng import SplitMix64, fisher_yates


class CorpusError(ValueError):
    """Fatal ingestion or gold-set problem (duplicate id, unknown label, ...)."""


class Label(enum.Enum):
    """Screening classes. Vaccine and Therapeutics are the positive classes."""

    VACCINE = "vaccine"
    THERAPEUTICS = "therapeutics"
    OTHER = "other"

    @classmethod
    def from_string(cls, s: str) -> "Label":
        try:
            return cls(s.strip().lower())
        except ValueError:
            raise CorpusError(f"unknown label {s!r}") from None

    @property
    def is_positive(self) -> bool:
        return self is not Label.OTHER


POSITIVE_LABELS = (Label.VACCINE, Label.THERAPEUTICS)


@dataclass(frozen=True)
class Article:
    """One corpus record; fields are stored trimmed and non-empty."""

    id: str
    title: str
    abstract: str
    journal: str


def compose_text(article: Article) -> str:
    """Title, abstract, and journal joined by single spaces, in that order."""
    parts = [article.title.strip(), article.abstract.strip(), article.journal.strip()]
    if not all(parts):
        raise CorpusError(f"article {article.id!r} has an empty field")
    return " ".join(parts)


class Corpus:
    """Immutable ordered collection of articles with unique ids."""

    def __init__(self, articles: Iterable[Article]):
        self._articles = tuple(articles)
        self._by_id: dict[str, Article] = {}
        for a in self._articles:
            if a.id in self._by_id:
                raise CorpusError(f"duplicate article id {a.id!r}")
            self._by_id[a.id] = a

    def __len__(self) -> int:
        return len(self._articles)

    def __iter__(self) -> Iterator[Article]:
        return iter(self._articles)

    def __contains__(self, article_id: str) -> bool:
        return article_id in self._by_id

    def __getitem__(self, article_id: str) -> Article:
        return self._by_id[article_id]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self._articles)


@dataclass
class IngestResult:
    """Outcome of one ingestion run.

    ``malformed`` lists (row_number, reason) for records that could not be
    parsed at all; those rows are skipped, while a duplicate id among kept
    rows aborts the run.
    """

    corpus: Corpus
    n_kept: int
    n_dropped: int
    malformed: list[tuple[int, str]] = field(default_factory=list)


_CANONICAL_COLUMNS = ("id", "title", "abstract", "journal")
_CORD19_COLUMN_MAP = {"cord_uid": "id", "title": "title", "abstract": "abstract", "journal": "journal"}


def ingest_metadata(source: TextIO | str | Path, fmt: str = "canonical") -> IngestResult:
    """Ingest a metadata CSV into a corpus.

    ``fmt`` is "canonical" (header id,title,abstract,journal) or "cord19"
    (cord_uid mapped to id). Rows with a missing or whitespace-only id,
    title, abstract, or journal are dropped; source order is preserved.
    """
    if fmt == "canonical":
        colmap = {c: c for c in _CANONICAL_COLUMNS}
    elif fmt == "cord19":
        colmap = _CORD19_COLUMN_MAP
    else:
        raise CorpusError(f"unknown metadata format {fmt!r}")

    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _ingest_rows(fh, colmap)
    return _ingest_rows(source, colmap)


def _ingest_rows(fh: TextIO, colmap: Mapping[str, str]) -> IngestResult:
    reader = csv.DictReader(fh, restkey="__extra__", restval=None)
    if reader.fieldnames is None:
        return IngestResult(Corpus([]), 0, 0, [])
    missing_cols = [src for src in colmap if src not in reader.fieldnames]
    if missing_cols:
        raise CorpusError(f"metadata header missing column(s): {', '.join(missing_cols)}")

    articles: list[Article] = []
    seen: dict[str, int] = {}
    malformed: list[tuple[int, str]] = []
    n_dropped = 0
    for row in reader:
        line = reader.line_num
        if "__extra__" in row:
            malformed.append((line, "too many fields"))
            continue
        values = {dst: row.get(src) for src, dst in colmap.items()}
        if any(v is None for v in values.values()):
            malformed.append((line, "too few fields"))
            continue
        values = {k: v.strip() for k, v in values.items()}
        if not values["id"]:
            malformed.append((line, "empty id"))
            continue
        if not (values["title"] and values["abstract"] and values["journal"]):
            n_dropped += 1
            continue
        if values["id"] in seen:
            raise CorpusError(f"duplicate article id {values['id']!r}")
        seen[values["id"]] = line
        articles.append(Article(**values))
    return IngestResult(Corpus(articles), len(articles), n_dropped, malformed)


CORPUS_MAGIC = "#vtscreen-corpus-v1"


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write the versioned corpus artifact (magic header + canonical CSV)."""
    buf = io.StringIO()
    buf.write(CORPUS_MAGIC + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CANONICAL_COLUMNS)
    for a in corpus:
        writer.writerow([a.id, a.title, a.abstract, a.journal])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_corpus(path: str | Path) -> Corpus:
    """Read a corpus artifact written by ``write_corpus``."""
    text = Path(path).read_text(encoding="utf-8")
    first, sep, rest = text.partition("\n")
    if first.rstrip("\r") != CORPUS_MAGIC:
        raise CorpusError(f"{path}: not a corpus artifact (expected header {CORPUS_MAGIC})")
    result = _ingest_rows(io.StringIO(rest), {c: c for c in _CANONICAL_COLUMNS})
    if result.malformed:
        line, reason = result.malformed[0]
        raise CorpusError(f"{path}: corrupt corpus artifact at line {line + 1}: {reason}")
    return result.corpus


def load_label_tsv(path: str | Path) -> dict[str, Label]:
    """Read article_id<TAB>label lines into an id-to-label map."""
    labels: dict[str, Label] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusError(f"{path}:{lineno}: expected article_id<TAB>label")
            article_id, label_str = parts[0].strip(), parts[1]
            if not article_id:
                raise CorpusError(f"{path}:{lineno}: empty article id")
            if article_id in labels:
                raise CorpusError(f"{path}:{lineno}: duplicate article id {article_id!r}")
            try:
                labels[article_id] = Label.from_string(label_str)
            except CorpusError as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from None
    return labels


def write_label_tsv(labels: Mapping[str, Label], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for article_id, label in labels.items():
            fh.write(f"{article_id}\t{label.value}\n")


@dataclass(frozen=True)
class GoldSet:
    """Gold annotations: one label map per annotator plus adjudicated labels."""

    annotations: tuple[dict[str, Label], ...]
    adjudicated: dict[str, Label]

    @classmethod
    def from_files(
        cls,
        annotator_files: Sequence[str | Path],
        adjudicated_file: str | Path | None = None,
    ) -> "GoldSet":
        """Build a gold set from 1..2 annotator TSVs.

        With two annotators, agreements adjudicate themselves; any
        disagreement must be covered by ``adjudicated_file`` or loading
        fails listing the unresolved ids.
        """
        if not 1 <= len(annotator_files) <= 2:
            raise CorpusError("expected 1 or 2 annotator files")
        annotations = tuple(load_label_tsv(p) for p in annotator_files)
        overrides = load_label_tsv(adjudicated_file) if adjudicated_file else {}
        if len(annotations) == 1:
            adjudicated = dict(annotations[0])
            adjudicated.update(overrides)
            return cls(annotations, adjudicated)

        first, second = annotations
        common = set(first) & set(second)
        adjudicated = {}
        unresolved = []
        for article_id in common:
            if first[article_id] == second[article_id]:
                adjudicated[article_id] = first[article_id]
            elif article_id in overrides:
                adjudicated[article_id] = overrides[article_id]
            else:
                unresolved.append(article_id)
        if unresolved:
            raise CorpusError(
                "annotators disagree with no adjudication for: " + ", ".join(sorted(unresolved))
            )
        return cls(annotations, adjudicated)

    def validate_against(self, corpus: Corpus) -> None:
        """Every annotated id must exist in the corpus."""
        annotated = set(self.adjudicated)
        for ann in self.annotations:
            annotated |= set(ann)
        missing = sorted(a for a in annotated if a not in corpus)
        if missing:
            raise CorpusError("annotated ids missing from corpus: " + ", ".join(missing))


class QueryClass(enum.Enum):
    VACCINE = "vaccine"
    THERAPEUTICS = "therapeutics"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class RankedResultList:
    """Search results for one query: ids ordered best-first with explicit ranks."""

    entries: tuple[str, ...]
    query_class: QueryClass
    ranks: tuple[int, ...] = ()

    def __post_init__(self):
        ranks = self.ranks or tuple(range(1, len(self.entries) + 1))
        object.__setattr__(self, "ranks", ranks)
        if len(ranks) != len(self.entries):
            raise CorpusError("ranks and entries length mismatch")
        if len(set(self.entries)) != len(self.entries):
            raise CorpusError("duplicate article id in ranked list")
        if any(r2 <= r1 for r1, r2 in zip(ranks, ranks[1:])):
            raise CorpusError("ranks must be strictly ascending")

    def rank_of(self, article_id: str) -> int | None:
        try:
            return self.ranks[self.entries.index(article_id)]
        except ValueError:
            return None

    @classmethod
    def from_tsv(cls, path: str | Path, query_class: QueryClass) -> "RankedResultList":
        """Read rank<TAB>article_id lines, rank ascending from 1."""
        entries: list[str] = []
        ranks: list[int] = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n").rstrip("\r")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise CorpusError(f"{path}:{lineno}: expected rank<TAB>article_id")
                try:
                    rank = int(parts[0])
                except ValueError:
                    raise CorpusError(f"{path}:{lineno}: rank {parts[0]!r} is not an integer") from None
                entries.append(parts[1].strip())
                ranks.append(rank)
        return cls(entries=tuple(entries), query_class=query_class, ranks=tuple(ranks))


@dataclass(frozen=True)
class WeakLabeledSet:
    """Deterministic 80/20 split of weakly labeled article ids."""

    train: dict[str, Label]
    validation: dict[str, Label]
    split_seed: int


class WeakLabelError(ValueError):
    pass


def build_weak_labels(
    pos_vaccine: RankedResultList,
    pos_thera: RankedResultList,
    negatives: Sequence[RankedResultList],
    corpus: Corpus,
    split_seed: int,
) -> WeakLabeledSet:
    """Derive weak labels from ranked search results and split them 80/20.

    An id in both positive lists goes to the class where its rank number is
    smaller (equal ranks go to Vaccine). Negative ids are the union of the
    negative lists restricted to the corpus, minus every positive id. The
    split shuffles the sorted id list with Fisher-Yates under
    SplitMix64(split_seed) and takes the first floor(0.8 n + 0.5) ids as
    train.
    """
    vaccine_ranks = {a: r for a, r in zip(pos_vaccine.entries, pos_vaccine.ranks) if a in corpus}
    thera_ranks = {a: r for a, r in zip(pos_thera.entries, pos_thera.ranks) if a in corpus}

    vaccine_ids = set(vaccine_ranks)
    thera_ids = set(thera_ranks)
    for article_id in vaccine_ids & thera_ids:
        if vaccine_ranks[article_id] <= thera_ranks[article_id]:
            thera_ids.discard(article_id)
        else:
            vaccine_ids.discard(article_id)

    negative_ids: set[str] = set()
    for lst in negatives:
        negative_ids.update(a for a in lst.entries if a in corpus)
    negative_ids -= vaccine_ids
    negative_ids -= thera_ids

    labeled: dict[str, Label] = {}
    for article_id in vaccine_ids:
        labeled[article_id] = Label.VACCINE
    for article_id in thera_ids:
        labeled[article_id] = Label.THERAPEUTICS
    for article_id in negative_ids:
        labeled[article_id] = Label.OTHER
    if not labeled:
        raise WeakLabelError("no weak labels produced")

    ids = sorted(labeled)
    fisher_yates(ids, SplitMix64(split_seed))
    n_train = (8 * len(ids) + 5) // 10
    train = {a: labeled[a] for a in ids[:n_train]}
    validation = {a: labeled[a] for a in ids[n_train:]}
    return WeakLabeledSet(train=train, validation=validation, split_seed=split_seed)
