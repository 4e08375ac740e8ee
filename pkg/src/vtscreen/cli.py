"""Command-line entry point.

Subcommands: ingest, weaklabel, score <scorer>, ensemble, eval,
categorize, report. Every command is deterministic given its inputs,
flags, and seed; reruns produce byte-identical output files.

Exit codes: 0 success, 1 validation error (bad flags, bad file contents,
unsatisfied contracts), 2 I/O error (missing or unreadable files). A
config file (JSON or TOML, one section per subcommand) can provide
defaults for any flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Mapping, Sequence

from . import defaults, ensemble as ensemble_mod, lexicon as lexicon_mod, micro, rules
from .corpus import (
    Corpus,
    CorpusError,
    Label,
    QueryClass,
    RankedResultList,
    WeakLabelError,
    build_weak_labels,
    ingest_metadata,
    load_label_tsv,
    read_corpus,
    write_corpus,
    write_label_tsv,
)
from .evalmetrics import (
    CategoryTable,
    EvalError,
    LexiconSpec,
    PRF,
    category_report,
    cohen_kappa,
    confusion,
    positive_prf,
    render_report,
)
from .lexicon import EmbeddingError, SeedConfig
from .micro import QueryError, QuerySet
from .rules import ScoreError
from .textprep import TextPrepError, load_stopwords, tokenize


class CliError(ValueError):
    """Bad flag combination or config content."""


_VALIDATION_ERRORS = (
    CorpusError,
    WeakLabelError,
    TextPrepError,
    QueryError,
    EmbeddingError,
    ScoreError,
    ensemble_mod.EnsembleError,
    EvalError,
    CliError,
)


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def load_structured(path: str | Path) -> dict:
    """Parse a JSON or TOML file by suffix."""
    suffix = Path(path).suffix.lower()
    text = Path(path).read_text(encoding="utf-8")
    if suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        return tomllib.loads(text)
    return json.loads(text)


def load_queries(path: str | Path) -> QuerySet:
    data = load_structured(path)
    try:
        return QuerySet(
            vaccine_queries=tuple(data["vaccine_queries"]),
            therapeutics_queries=tuple(data["therapeutics_queries"]),
        )
    except KeyError as exc:
        raise QueryError(f"{path}: missing key {exc.args[0]!r}") from None


def load_seed_config(path: str | Path) -> SeedConfig:
    data = load_structured(path)
    base = defaults.default_seed_config()
    try:
        return SeedConfig(
            vaccine_seeds=tuple(data["vaccine_seeds"]),
            therapeutics_seeds=tuple(data["therapeutics_seeds"]),
            pair_budget=int(data.get("pair_budget", base.pair_budget)),
            k=int(data.get("k", base.k)),
        )
    except KeyError as exc:
        raise EmbeddingError(f"{path}: missing key {exc.args[0]!r}") from None


def _write_text(path: str | Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parse_named_paths(pairs: Sequence[str]) -> dict[str, Path]:
    out: dict[str, Path] = {}
    for pair in pairs:
        name, sep, path = pair.partition("=")
        if not sep or not name or not path:
            raise CliError(f"expected NAME=PATH, got {pair!r}")
        if name in out:
            raise CliError(f"duplicate prediction name {name!r}")
        out[name] = Path(path)
    return out


def _prediction_labels(path: Path) -> dict[str, Label]:
    return {a: label for a, (label, _) in rules.load_predictions(path).items()}


# ---------------------------------------------------------------- commands


def cmd_ingest(args) -> int:
    result = ingest_metadata(args.metadata, fmt=args.format)
    for line, reason in result.malformed:
        print(f"{args.metadata}:{line}: skipped malformed row ({reason})", file=sys.stderr)
    write_corpus(result.corpus, args.out)
    print(f"kept {result.n_kept} / dropped {result.n_dropped}")
    return 0


def cmd_weaklabel(args) -> int:
    corpus = read_corpus(args.corpus)
    pos_v = RankedResultList.from_tsv(args.vaccine, QueryClass.VACCINE)
    pos_t = RankedResultList.from_tsv(args.therapeutics, QueryClass.THERAPEUTICS)
    negatives = [RankedResultList.from_tsv(p, QueryClass.NEGATIVE) for p in args.negative or []]
    weak = build_weak_labels(pos_v, pos_t, negatives, corpus, args.seed)
    write_label_tsv(dict(sorted(weak.train.items())), args.out_train)
    write_label_tsv(dict(sorted(weak.validation.items())), args.out_validation)
    print(f"train {len(weak.train)} / validation {len(weak.validation)}")
    return 0


def _stopword_set(args) -> frozenset[str] | None:
    return load_stopwords(args.stopwords) if args.stopwords else None


def _score_ms(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    queries = load_queries(args.queries) if args.queries else defaults.default_queries()
    stopwords = _stopword_set(args)
    doc_tokens = [tokenize(micro.article_text(a.title, a.abstract), stopwords) for a in corpus]
    model = micro.fit_model(doc_tokens, queries, stopwords)
    scorer = micro.MicroScorer(model, queries, stopwords)
    out: dict[str, rules.Prediction] = {}
    for article, tokens in zip(corpus, doc_tokens):
        scores = scorer.score(tokens)
        label = micro.label(scores)
        winning = {Label.VACCINE: scores.vs, Label.THERAPEUTICS: scores.ts, Label.OTHER: scores.os}
        out[article.id] = (label, winning[label])
    return out


def _score_lss(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    if not args.embeddings:
        raise CliError("score lss requires --embeddings")
    table = lexicon_mod.load_embeddings(args.embeddings)
    seeds = load_seed_config(args.seeds) if args.seeds else defaults.default_seed_config()
    pair_budget = args.pair_budget if args.pair_budget is not None else seeds.pair_budget
    k = args.k if args.k is not None else seeds.k
    if pair_budget < 1 or k < 1:
        raise CliError("--pair-budget and --k must be >= 1")
    vaccine_ext = lexicon_mod.expand_seeds(table, seeds.vaccine_seeds, pair_budget)
    thera_ext = lexicon_mod.expand_seeds(table, seeds.therapeutics_seeds, pair_budget)
    stopwords = _stopword_set(args)
    out: dict[str, rules.Prediction] = {}
    for article in corpus:
        tokens = tokenize(article.abstract, stopwords)
        v_score, t_score = lexicon_mod.score_article(tokens, vaccine_ext, thera_ext, table, k)
        label = lexicon_mod.label(v_score, t_score, args.min_score)
        out[article.id] = (label, max(v_score, t_score))
    return out


def _require_coverage(raw: Mapping[str, object], corpus: Corpus, what: str) -> None:
    missing = [a for a in corpus.ids if a not in raw]
    if missing:
        raise CliError(f"{what} missing for article(s): " + ", ".join(missing))


def _score_nsp(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    if not args.scores:
        raise CliError("score nsp requires --scores")
    if not 0.0 < args.threshold <= 1.0:
        raise CliError("--threshold must be in (0, 1]")
    raw = rules.load_nsp_scores(args.scores)
    _require_coverage(raw, corpus, "nsp scores")
    out: dict[str, rules.Prediction] = {}
    for article_id in corpus.ids:
        s = raw[article_id]
        out[article_id] = (rules.nsp_label(s, args.threshold), max(s.p_vaccine, s.p_therapeutics))
    return out


def _score_ch(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    if not args.nsp_scores:
        raise CliError("score ch requires --nsp-scores")
    if not args.ch_scores:
        raise CliError("score ch requires --ch-scores")
    if not 0.0 < args.threshold <= 1.0:
        raise CliError("--threshold must be in (0, 1]")
    nsp_raw = rules.load_nsp_scores(args.nsp_scores)
    ch_raw = rules.load_ch_scores(args.ch_scores)
    _require_coverage(nsp_raw, corpus, "nsp scores")
    _require_coverage(ch_raw, corpus, "ch scores")
    out: dict[str, rules.Prediction] = {}
    for article_id in corpus.ids:
        gate = rules.nsp_label(nsp_raw[article_id], args.threshold)
        out[article_id] = (rules.ch_combine(gate, ch_raw[article_id], args.cut), ch_raw[article_id].p_therapeutics)
    return out


def _score_sts(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    if not args.scores:
        raise CliError("score sts requires --scores")
    if args.top_n < 1:
        raise CliError("--top-n must be >= 1")
    raw = rules.load_sts_scores(args.scores)
    _require_coverage(raw, corpus, "sts scores")
    out: dict[str, rules.Prediction] = {}
    for article_id in corpus.ids:
        s = raw[article_id]
        v_score, t_score = rules.sts_class_scores(s, args.top_n)
        out[article_id] = (rules.sts_label(s, args.top_n, args.sts_threshold), max(v_score, t_score))
    return out


def _score_external(args, corpus: Corpus) -> dict[str, rules.Prediction]:
    if not args.predictions:
        raise CliError("score external requires --predictions")
    raw = rules.load_predictions(args.predictions)
    _require_coverage(raw, corpus, "predictions")
    return {article_id: raw[article_id] for article_id in corpus.ids}


_SCORERS = {
    "ms": _score_ms,
    "lss": _score_lss,
    "nsp": _score_nsp,
    "ch": _score_ch,
    "sts": _score_sts,
    "external": _score_external,
}


def cmd_score(args) -> int:
    corpus = read_corpus(args.corpus)
    predictions = _SCORERS[args.scorer](args, corpus)
    rules.write_predictions(predictions, args.out)
    print(f"scored {len(predictions)} articles with {args.scorer}")
    return 0


def cmd_ensemble(args) -> int:
    paths = _parse_named_paths(args.pred)
    subset = [s.strip() for s in args.subset.split(",") if s.strip()]
    if not subset:
        raise CliError("--subset must name at least one scorer")
    predictions = {name: _prediction_labels(path) for name, path in paths.items()}
    voted = ensemble_mod.run_ensemble(predictions, subset, seed=args.seed)
    rules.write_predictions({a: (label, None) for a, label in voted.items()}, args.out)
    print(f"ensembled {len(voted)} articles over {len(subset)} scorers")
    return 0


def _metrics_rows(gold: Mapping[str, Label], systems: Mapping[str, Mapping[str, Label]]):
    rows: list[tuple[str, PRF]] = []
    for name, preds in systems.items():
        missing = [a for a in gold if a not in preds]
        if missing:
            raise EvalError(f"system {name!r} lacks predictions for: " + ", ".join(sorted(missing)))
        restricted = {a: preds[a] for a in gold}
        metrics = positive_prf(confusion(gold, restricted))
        rows.append((f"{name} (micro)", metrics.micro))
        rows.append((f"{name} (macro)", metrics.macro))
    return rows


def _metrics_json(rows: Sequence[tuple[str, PRF]], categories: CategoryTable | None, kappa: float | None) -> str:
    doc: dict = {
        "metrics": [
            {"system": name, "precision": prf.precision, "recall": prf.recall, "f_measure": prf.f1}
            for name, prf in rows
        ],
        "categories": None,
        "kappa": kappa,
    }
    if categories is not None:
        doc["categories"] = {
            "systems": list(categories.systems),
            "totals": {str(cat): categories.totals[cat] for cat in (1, 2, 3, 4)},
            "correct": {
                system: {str(cat): categories.correct[(system, cat)] for cat in (1, 2, 3, 4)}
                for system in categories.systems
            },
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_eval(args) -> int:
    gold = load_label_tsv(args.gold)
    systems = {name: _prediction_labels(path) for name, path in _parse_named_paths(args.pred).items()}
    rows = _metrics_rows(gold, systems)

    categories = None
    if args.corpus:
        corpus = read_corpus(args.corpus)
        lex = LexiconSpec.from_file(args.lexicon) if args.lexicon else defaults.default_lexicon()
        restricted = {name: {a: preds[a] for a in gold} for name, preds in systems.items()}
        categories = category_report(corpus, gold, restricted, lex)

    kappa = None
    if args.annotator:
        if len(args.annotator) != 2:
            raise CliError("kappa needs exactly two --annotator files")
        kappa = cohen_kappa(load_label_tsv(args.annotator[0]), load_label_tsv(args.annotator[1]))
        print(f"kappa: {kappa:.4f}")

    fmt = {"md": "markdown", "markdown": "markdown", "csv": "csv"}.get(args.report)
    if fmt is None:
        raise CliError(f"unknown report format {args.report!r}")
    _write_text(args.out, render_report(rows, categories, fmt))
    if args.json:
        _write_text(args.json, _metrics_json(rows, categories, kappa))
    print(f"evaluated {len(systems)} system(s) on {len(gold)} gold articles")
    return 0


def cmd_categorize(args) -> int:
    corpus = read_corpus(args.corpus)
    gold = load_label_tsv(args.gold)
    lex = LexiconSpec.from_file(args.lexicon) if args.lexicon else defaults.default_lexicon()
    systems = {name: _prediction_labels(path) for name, path in _parse_named_paths(args.pred or []).items()}
    for name, preds in systems.items():
        missing = [a for a in gold if a not in preds]
        if missing:
            raise EvalError(f"system {name!r} lacks predictions for: " + ", ".join(sorted(missing)))
    restricted = {name: {a: preds[a] for a in gold} for name, preds in systems.items()}
    table = category_report(corpus, gold, restricted, lex)

    import csv as _csv
    import io as _io

    buf = _io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["category", "total", "percent", *table.systems])
    for cat in (1, 2, 3, 4):
        writer.writerow(
            [
                cat,
                table.totals[cat],
                f"{table.percentage(cat):.2f}",
                *(table.correct[(system, cat)] for system in table.systems),
            ]
        )
    _write_text(args.out, buf.getvalue())
    if args.assignments:
        abuf = _io.StringIO()
        awriter = _csv.writer(abuf, lineterminator="\n")
        awriter.writerow(["article_id", "category"])
        for article_id in sorted(table.assignment):
            awriter.writerow([article_id, table.assignment[article_id]])
        _write_text(args.assignments, abuf.getvalue())
    totals = " ".join(f"{cat}={table.totals[cat]}" for cat in (1, 2, 3, 4))
    print(f"category totals: {totals}")
    return 0


def cmd_report(args) -> int:
    doc = json.loads(Path(args.json).read_text(encoding="utf-8"))
    rows = [
        (m["system"], PRF(m["precision"], m["recall"], m["f_measure"]))
        for m in doc.get("metrics", [])
    ]
    categories = None
    cat_doc = doc.get("categories")
    if cat_doc:
        systems = tuple(cat_doc["systems"])
        totals = {int(c): int(n) for c, n in cat_doc["totals"].items()}
        correct = {
            (system, int(c)): int(n)
            for system, per_cat in cat_doc["correct"].items()
            for c, n in per_cat.items()
        }
        categories = CategoryTable(assignment={}, totals=totals, correct=correct, systems=systems)
    fmt = {"md": "markdown", "markdown": "markdown", "csv": "csv"}.get(args.format)
    if fmt is None:
        raise CliError(f"unknown report format {args.format!r}")
    _write_text(args.out, render_report(rows, categories, fmt))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="vtscreen", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", help="JSON or TOML file with per-subcommand flag defaults")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("ingest", help="ingest a metadata CSV into a corpus artifact")
    p.add_argument("--metadata", required=True, help="input CSV (id,title,abstract,journal)")
    p.add_argument("--format", default="canonical", choices=["canonical", "cord19"])
    p.add_argument("--out", required=True, help="corpus artifact path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("weaklabel", help="build weak labels from ranked result lists")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vaccine", required=True, help="ranked list TSV for the vaccine query")
    p.add_argument("--therapeutics", required=True, help="ranked list TSV for the therapeutics query")
    p.add_argument("--negative", action="append", help="ranked list TSV for a negative query (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-train", required=True)
    p.add_argument("--out-validation", required=True)
    p.set_defaults(func=cmd_weaklabel)

    p = sub.add_parser("score", help="run one scorer over the corpus")
    p.add_argument("scorer", choices=sorted(_SCORERS))
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--queries", help="[ms] query file (json/toml)")
    p.add_argument("--stopwords", help="[ms|lss] stopword file, one token per line")
    p.add_argument("--embeddings", help="[lss] embedding table file")
    p.add_argument("--seeds", help="[lss] seed config file (json/toml)")
    p.add_argument("--pair-budget", type=int, help="[lss] expansion pair budget")
    p.add_argument("--k", type=int, help="[lss] representative words per article")
    p.add_argument("--min-score", type=float, help="[lss] map both-below-threshold articles to Other")
    p.add_argument("--scores", help="[nsp|sts] raw score TSV")
    p.add_argument("--nsp-scores", help="[ch] raw NSP score TSV")
    p.add_argument("--ch-scores", help="[ch] raw CH score TSV")
    p.add_argument("--threshold", type=float, default=0.999, help="[nsp|ch] probability threshold")
    p.add_argument("--cut", type=float, default=0.5, help="[ch] therapeutics probability cut")
    p.add_argument("--top-n", type=int, default=3, help="[sts] segments averaged per class")
    p.add_argument("--sts-threshold", type=float, default=2.0, help="[sts] positive-class threshold")
    p.add_argument("--predictions", help="[external] prediction TSV to validate and reorder")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("ensemble", help="majority-vote scorer predictions")
    p.add_argument("--pred", action="append", required=True, metavar="NAME=PATH")
    p.add_argument("--subset", required=True, help="comma-separated scorer names")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("eval", help="score predictions against gold labels")
    p.add_argument("--gold", required=True, help="adjudicated gold label TSV")
    p.add_argument("--pred", action="append", required=True, metavar="NAME=PATH")
    p.add_argument("--annotator", action="append", help="annotator label TSV (give twice for kappa)")
    p.add_argument("--corpus", help="corpus artifact; enables the category analysis")
    p.add_argument("--lexicon", help="lexicon file (defaults to the bundled task lexicon)")
    p.add_argument("--report", default="md", help="report format: md or csv")
    p.add_argument("--out", required=True)
    p.add_argument("--json", help="also write machine-readable metrics JSON")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("categorize", help="2x2 category breakdown of the gold set")
    p.add_argument("--corpus", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--lexicon", help="lexicon file (defaults to the bundled task lexicon)")
    p.add_argument("--pred", action="append", metavar="NAME=PATH", help="include per-system correct counts")
    p.add_argument("--out", required=True)
    p.add_argument("--assignments", help="also write per-article category CSV")
    p.set_defaults(func=cmd_categorize)

    p = sub.add_parser("report", help="render saved metrics JSON as markdown or CSV")
    p.add_argument("--json", required=True)
    p.add_argument("--format", default="md")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    subparsers = {name: action for name, action in sub.choices.items()}
    return parser, subparsers


def _apply_config(subparsers: dict[str, _Parser], argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    config = load_structured(known.config)
    if not isinstance(config, dict):
        raise CliError(f"{known.config}: config root must be a table of subcommand sections")
    for section, values in config.items():
        sp = subparsers.get(section)
        if sp is None:
            raise CliError(f"{known.config}: unknown config section {section!r}")
        valid = {a.dest for a in sp._actions}  # noqa: SLF001
        for key, value in values.items():
            dest = key.replace("-", "_")
            if dest not in valid:
                raise CliError(f"{known.config}: unknown option {key!r} in section {section!r}")
            sp.set_defaults(**{dest: value})


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    try:
        _apply_config(subparsers, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
