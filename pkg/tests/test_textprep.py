import math

import numpy as np
import pytest

from oracles import brute_cosine_dict, brute_tfidf_vectors
from vtscreen.textprep import (
    SparseVector,
    TextPrepError,
    cosine,
    fit_tfidf,
    load_stopwords,
    split_sentences,
    tokenize,
    vectorize,
)


class TestTokenize:
    def test_splits_on_non_alphanumeric(self):
        assert tokenize("COVID-19 Vaccine!") == ["covid", "19", "vaccine"]

    def test_empty(self):
        assert tokenize("") == []

    def test_hyphenated(self):
        assert tokenize("mRNA-based") == ["mrna", "based"]

    def test_underscore_is_a_separator(self):
        assert tokenize("spike_protein") == ["spike", "protein"]

    def test_stopword_filtering(self):
        assert tokenize("the vaccine works", stopwords={"the"}) == ["vaccine", "works"]

    def test_idempotent_over_join(self):
        text = "Efficacy of BNT162b2 mRNA vaccine: interim analysis!"
        tokens = tokenize(text)
        assert tokenize(" ".join(tokens)) == tokens


class TestSplitSentences:
    def test_basic_split(self):
        assert split_sentences("A done. B next.") == ["A done.", "B next."]

    def test_no_split_inside_abbreviations_or_numbers(self):
        assert split_sentences("e.g. value 3.5 rises.") == ["e.g. value 3.5 rises."]

    def test_empty(self):
        assert split_sentences("") == []

    def test_question_and_exclamation(self):
        assert split_sentences("Really? Yes! Done.") == ["Really?", "Yes!", "Done."]

    def test_lowercase_continuation_not_split(self):
        assert split_sentences("Dr. smith agreed. Then left.") == ["Dr. smith agreed.", "Then left."]

    def test_segments_cover_input(self):
        text = "First result 1.2 shown. Second holds! Third e.g. ends?"
        joined = " ".join(split_sentences(text))
        assert tokenize(joined) == tokenize(text)


class TestFitTfidf:
    def test_term_in_every_doc_has_idf_one(self):
        model = fit_tfidf([["covid", "x"], ["covid"], ["covid", "y"]])
        tid = model.vocabulary["covid"]
        assert model.idf[tid] == pytest.approx(1.0, abs=1e-12)

    def test_idf_formula(self):
        # N=3, df=1: ln(4/2) + 1
        model = fit_tfidf([["rare", "a"], ["a"], ["a"]])
        tid = model.vocabulary["rare"]
        assert model.idf[tid] == pytest.approx(math.log(2) + 1.0, abs=1e-12)

    def test_identical_docs_vectorize_identically(self):
        doc = ["covid", "vaccine", "covid"]
        model = fit_tfidf([doc, list(doc)])
        va = vectorize(model, doc)
        vb = vectorize(model, list(doc))
        assert va.entries == vb.entries

    def test_all_empty_documents_rejected(self):
        with pytest.raises(TextPrepError):
            fit_tfidf([[], []])

    def test_no_documents_rejected(self):
        with pytest.raises(TextPrepError):
            fit_tfidf([])

    def test_counts_documents_not_occurrences(self):
        model = fit_tfidf([["a", "a", "a"], ["b"]])
        assert model.n_docs == 2
        # df(a) = 1 despite three occurrences
        assert model.idf[model.vocabulary["a"]] == pytest.approx(math.log(3 / 2) + 1.0)


class TestVectorize:
    def test_oov_tokens_ignored(self):
        model = fit_tfidf([["known"]])
        assert len(vectorize(model, ["unknown", "tokens"])) == 0

    def test_raw_count_times_idf(self):
        model = fit_tfidf([["covid", "x"], ["covid"], ["covid", "y"]])
        vec = vectorize(model, ["covid", "covid"])
        assert vec.entries[model.vocabulary["covid"]] == pytest.approx(2.0, abs=1e-12)

    def test_matches_brute_force_fixture(self):
        docs = [["a", "b", "a"], ["b", "c"], ["c", "c", "d"]]
        model = fit_tfidf(docs)
        expected, idf = brute_tfidf_vectors(docs)
        for doc, exp in zip(docs, expected):
            got = vectorize(model, doc).entries
            by_term = {term: got[model.vocabulary[term]] for term in exp}
            assert by_term == pytest.approx(exp, abs=1e-12)
        for term, value in idf.items():
            assert model.idf[model.vocabulary[term]] == pytest.approx(value, abs=1e-12)


class TestCosine:
    def test_self_similarity(self):
        v = SparseVector.from_entries({1: 0.3, 5: 2.0})
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_support(self):
        a = SparseVector.from_entries({1: 1.0})
        b = SparseVector.from_entries({2: 1.0})
        assert cosine(a, b) == 0.0

    def test_hand_value(self):
        a = SparseVector.from_entries({1: 1.0, 2: 1.0})
        b = SparseVector.from_entries({1: 1.0})
        assert cosine(a, b) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_empty_vector_scores_zero(self):
        a = SparseVector.from_entries({})
        b = SparseVector.from_entries({1: 1.0})
        assert cosine(a, b) == 0.0

    def test_symmetry_and_scale_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = SparseVector.from_entries(
                {int(i): float(w) for i, w in zip(rng.choice(40, 8, replace=False), rng.uniform(0.1, 3, 8))}
            )
            b = SparseVector.from_entries(
                {int(i): float(w) for i, w in zip(rng.choice(40, 8, replace=False), rng.uniform(0.1, 3, 8))}
            )
            assert cosine(a, b) == cosine(b, a)
            c = float(rng.uniform(0.1, 10))
            scaled = SparseVector.from_entries({i: c * w for i, w in a.entries.items()})
            assert cosine(scaled, b) == pytest.approx(cosine(a, b), abs=1e-12)
            assert 0.0 <= cosine(a, b) <= 1.0

    def test_negative_weights_rejected(self):
        with pytest.raises(TextPrepError):
            SparseVector.from_entries({1: -0.5})

    def test_zero_entries_dropped(self):
        v = SparseVector.from_entries({1: 0.0, 2: 1.0})
        assert list(v.ids) == [2]


class TestRandomCorporaOracle:
    def test_vectorize_and_cosine_match_brute_force(self):
        rng = np.random.default_rng(99)
        terms = [f"t{i}" for i in range(50)]
        for _ in range(20):
            n_docs = int(rng.integers(1, 20))
            docs = []
            for _ in range(n_docs):
                length = int(rng.integers(0, 30))
                docs.append([terms[int(i)] for i in rng.integers(0, 50, size=length)])
            if not any(docs):
                docs[0] = ["t0"]
            model = fit_tfidf(docs)
            expected, _ = brute_tfidf_vectors(docs)
            vecs = [vectorize(model, d) for d in docs]
            for vec, exp in zip(vecs, expected):
                got = {term: vec.entries.get(model.vocabulary[term], 0.0) for term in exp}
                assert got == pytest.approx(exp, abs=1e-12)
            for i in range(min(5, n_docs)):
                for j in range(min(5, n_docs)):
                    assert cosine(vecs[i], vecs[j]) == pytest.approx(
                        brute_cosine_dict(expected[i], expected[j]), abs=1e-12
                    )


def test_load_stopwords(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("the\nand\n\n of \n", encoding="utf-8")
    assert load_stopwords(p) == {"the", "and", "of"}
