import io

import pytest

from vtscreen.corpus import (
    Article,
    Corpus,
    CorpusError,
    GoldSet,
    Label,
    QueryClass,
    RankedResultList,
    WeakLabelError,
    build_weak_labels,
    compose_text,
    ingest_metadata,
    load_label_tsv,
    read_corpus,
    write_corpus,
    write_label_tsv,
)


def _csv(rows):
    return io.StringIO("id,title,abstract,journal\n" + "\n".join(rows) + "\n")


def _corpus(ids):
    return Corpus(Article(id=i, title="T", abstract="A", journal="J") for i in ids)


class TestIngest:
    def test_drops_rows_with_missing_fields(self):
        src = _csv(["a1,T,A,J", "a2,T,,J", "a3,T,A,J", "a4,,A,J", "a5,T,A,J"])
        result = ingest_metadata(src)
        assert result.n_kept == 3
        assert result.n_dropped == 2
        assert result.corpus.ids == ("a1", "a3", "a5")

    def test_empty_input(self):
        result = ingest_metadata(io.StringIO("id,title,abstract,journal\n"))
        assert len(result.corpus) == 0
        assert result.n_dropped == 0

    def test_duplicate_id_is_fatal_and_named(self):
        rows = [f"a{i},T,A,J" for i in range(9)] + ["a3,T2,A2,J2"]
        with pytest.raises(CorpusError, match="a3"):
            ingest_metadata(_csv(rows))

    def test_whitespace_only_fields_count_as_missing(self):
        result = ingest_metadata(_csv(["a1,T,   ,J"]))
        assert result.n_kept == 0
        assert result.n_dropped == 1

    def test_fields_are_trimmed(self):
        result = ingest_metadata(_csv(['a1," T "," A ",J']))
        a = result.corpus["a1"]
        assert (a.title, a.abstract) == ("T", "A")

    def test_malformed_rows_reported_with_row_number_and_skipped(self):
        src = io.StringIO("id,title,abstract,journal\na1,T,A,J\na2,T,A\na3,T,A,J\n")
        result = ingest_metadata(src)
        assert result.corpus.ids == ("a1", "a3")
        assert result.malformed == [(3, "too few fields")]

    def test_empty_id_is_malformed(self):
        result = ingest_metadata(_csv([",T,A,J"]))
        assert result.malformed and result.malformed[0][1] == "empty id"

    def test_cord19_adapter(self):
        src = io.StringIO("cord_uid,title,abstract,journal,extra\nx1,T,A,J,ignored\n")
        result = ingest_metadata(src, fmt="cord19")
        assert result.corpus.ids == ("x1",)

    def test_missing_header_column_is_fatal(self):
        with pytest.raises(CorpusError, match="journal"):
            ingest_metadata(io.StringIO("id,title,abstract\na1,T,A\n"))

    def test_idempotent_through_artifact(self, tmp_path):
        src = _csv(["a1,T1,A1,J1", 'a2,"T,2","A ""q""",J2'])
        corpus = ingest_metadata(src).corpus
        path = tmp_path / "corpus.bin"
        write_corpus(corpus, path)
        again = read_corpus(path)
        assert [(a.id, a.title, a.abstract, a.journal) for a in again] == [
            (a.id, a.title, a.abstract, a.journal) for a in corpus
        ]

    def test_artifact_magic_header_checked(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_text("id,title,abstract,journal\na1,T,A,J\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="not a corpus artifact"):
            read_corpus(path)


class TestComposeText:
    def test_concatenation_order(self):
        assert compose_text(Article(id="x", title="T", abstract="A", journal="J")) == "T A J"

    def test_trimming(self):
        assert compose_text(Article(id="x", title="T ", abstract=" A", journal="J")) == "T A J"

    def test_empty_field_is_contract_error(self):
        with pytest.raises(CorpusError):
            compose_text(Article(id="x", title="T", abstract="  ", journal="J"))


class TestLabelTsv:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "gold.tsv"
        labels = {"a1": Label.VACCINE, "a2": Label.OTHER}
        write_label_tsv(labels, path)
        assert load_label_tsv(path) == labels

    def test_unknown_label_fatal(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("a1\tvacine\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="vacine"):
            load_label_tsv(path)

    def test_duplicate_id_fatal(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("a1\tvaccine\na1\tother\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="duplicate"):
            load_label_tsv(path)


class TestGoldSet:
    def test_two_annotators_agree(self, tmp_path):
        a = tmp_path / "a.tsv"
        b = tmp_path / "b.tsv"
        a.write_text("x\tvaccine\ny\tother\n", encoding="utf-8")
        b.write_text("x\tvaccine\ny\tother\n", encoding="utf-8")
        gs = GoldSet.from_files([a, b])
        assert gs.adjudicated == {"x": Label.VACCINE, "y": Label.OTHER}

    def test_disagreement_requires_adjudication(self, tmp_path):
        a = tmp_path / "a.tsv"
        b = tmp_path / "b.tsv"
        a.write_text("x\tvaccine\n", encoding="utf-8")
        b.write_text("x\tother\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="x"):
            GoldSet.from_files([a, b])
        adj = tmp_path / "adj.tsv"
        adj.write_text("x\ttherapeutics\n", encoding="utf-8")
        gs = GoldSet.from_files([a, b], adjudicated_file=adj)
        assert gs.adjudicated == {"x": Label.THERAPEUTICS}

    def test_validate_against_corpus(self, tmp_path):
        a = tmp_path / "a.tsv"
        a.write_text("x\tvaccine\nmissing\tother\n", encoding="utf-8")
        gs = GoldSet.from_files([a])
        with pytest.raises(CorpusError, match="missing"):
            gs.validate_against(_corpus(["x"]))


class TestRankedResultList:
    def test_from_tsv(self, tmp_path):
        p = tmp_path / "ranked.tsv"
        p.write_text("1\ta1\n2\ta2\n5\ta3\n", encoding="utf-8")
        lst = RankedResultList.from_tsv(p, QueryClass.VACCINE)
        assert lst.entries == ("a1", "a2", "a3")
        assert lst.rank_of("a3") == 5

    def test_duplicate_id_rejected(self):
        with pytest.raises(CorpusError, match="duplicate"):
            RankedResultList(entries=("a", "a"), query_class=QueryClass.NEGATIVE)

    def test_non_ascending_ranks_rejected(self, tmp_path):
        p = tmp_path / "ranked.tsv"
        p.write_text("2\ta1\n1\ta2\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="ascending"):
            RankedResultList.from_tsv(p, QueryClass.VACCINE)


class TestBuildWeakLabels:
    def test_rank_preference_for_shared_positive(self):
        corpus = _corpus(["x", "p", "q"])
        vacc = RankedResultList(entries=("p", "z", "x"), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=("q", "w", "e", "r", "t", "y", "x"), query_class=QueryClass.THERAPEUTICS)
        weak = build_weak_labels(vacc, thera, [], corpus, split_seed=1)
        labels = {**weak.train, **weak.validation}
        # x: vaccine rank 3 beats therapeutics rank 7
        assert labels["x"] == Label.VACCINE
        assert labels["p"] == Label.VACCINE
        assert labels["q"] == Label.THERAPEUTICS

    def test_equal_rank_goes_to_vaccine(self):
        corpus = _corpus(["x"])
        vacc = RankedResultList(entries=("x",), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=("x",), query_class=QueryClass.THERAPEUTICS)
        weak = build_weak_labels(vacc, thera, [], corpus, split_seed=1)
        labels = {**weak.train, **weak.validation}
        assert labels["x"] == Label.VACCINE

    def test_positive_removed_from_negatives(self):
        corpus = _corpus(["y", "n1", "v2"])
        vacc = RankedResultList(entries=("y", "v2"), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=("t9",), query_class=QueryClass.THERAPEUTICS)
        neg = RankedResultList(entries=("y", "n1"), query_class=QueryClass.NEGATIVE)
        weak = build_weak_labels(vacc, thera, [neg], corpus, split_seed=1)
        labels = {**weak.train, **weak.validation}
        assert labels["y"] == Label.VACCINE
        assert labels["n1"] == Label.OTHER
        assert labels["v2"] == Label.VACCINE

    def test_split_is_80_20_and_deterministic(self):
        corpus = _corpus([f"a{i}" for i in range(10)])
        vacc = RankedResultList(entries=tuple(f"a{i}" for i in range(5)), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=tuple(f"a{i}" for i in range(5, 10)), query_class=QueryClass.THERAPEUTICS)
        first = build_weak_labels(vacc, thera, [], corpus, split_seed=77)
        assert len(first.train) == 8
        assert len(first.validation) == 2
        second = build_weak_labels(vacc, thera, [], corpus, split_seed=77)
        assert first.train == second.train
        assert first.validation == second.validation
        different = build_weak_labels(vacc, thera, [], corpus, split_seed=78)
        assert {**different.train, **different.validation} == {**first.train, **first.validation}

    def test_negative_list_order_irrelevant(self):
        corpus = _corpus(["a", "b", "c", "v"])
        vacc = RankedResultList(entries=("v",), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=("zz",), query_class=QueryClass.THERAPEUTICS)
        n1 = RankedResultList(entries=("a", "b"), query_class=QueryClass.NEGATIVE)
        n2 = RankedResultList(entries=("c", "b"), query_class=QueryClass.NEGATIVE)
        one = build_weak_labels(vacc, thera, [n1, n2], corpus, split_seed=5)
        two = build_weak_labels(vacc, thera, [n2, n1], corpus, split_seed=5)
        assert one.train == two.train
        assert one.validation == two.validation

    def test_positive_sets_disjoint_and_disjoint_from_negatives(self):
        ids = [f"d{i}" for i in range(30)]
        corpus = _corpus(ids)
        vacc = RankedResultList(entries=tuple(ids[:12]), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=tuple(ids[6:18]), query_class=QueryClass.THERAPEUTICS)
        neg = RankedResultList(entries=tuple(ids[10:25]), query_class=QueryClass.NEGATIVE)
        weak = build_weak_labels(vacc, thera, [neg], corpus, split_seed=3)
        labels = {**weak.train, **weak.validation}
        assert set(weak.train) & set(weak.validation) == set()
        vacc_set = {a for a, l in labels.items() if l == Label.VACCINE}
        thera_set = {a for a, l in labels.items() if l == Label.THERAPEUTICS}
        other_set = {a for a, l in labels.items() if l == Label.OTHER}
        assert vacc_set & thera_set == set()
        assert (vacc_set | thera_set) & other_set == set()

    def test_empty_result_is_error(self):
        corpus = _corpus(["only"])
        vacc = RankedResultList(entries=("nope",), query_class=QueryClass.VACCINE)
        thera = RankedResultList(entries=("nada",), query_class=QueryClass.THERAPEUTICS)
        with pytest.raises(WeakLabelError, match="no weak labels"):
            build_weak_labels(vacc, thera, [], corpus, split_seed=1)
