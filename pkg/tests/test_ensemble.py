import numpy as np
import pytest

from vtscreen.corpus import Label
from vtscreen.ensemble import EnsembleError, majority_vote, run_ensemble

V, T, O = Label.VACCINE, Label.THERAPEUTICS, Label.OTHER


def _ballot(labels):
    return {f"s{i}": label for i, label in enumerate(labels)}


class TestMajorityVote:
    def test_strict_majority(self):
        assert majority_vote(_ballot([V, V, T])) == V

    def test_positive_preferred_over_other(self):
        assert majority_vote(_ballot([O, O, T, T])) == T
        assert majority_vote(_ballot([O, V])) == V

    def test_unanimous(self):
        for label in (V, T, O):
            assert majority_vote(_ballot([label, label, label])) == label

    def test_positive_tie_is_seeded_and_reproducible(self):
        ballot = _ballot([V, T, O])
        outcome = majority_vote(ballot, seed=42, article_id="a9")
        assert outcome in (V, T)
        for _ in range(100):
            assert majority_vote(ballot, seed=42, article_id="a9") == outcome

    def test_positive_tie_varies_with_key(self):
        ballot = _ballot([V, T])
        outcomes = {majority_vote(ballot, seed=1, article_id=f"a{i}") for i in range(64)}
        assert outcomes == {V, T}

    def test_three_way_tie_drops_other(self):
        for i in range(32):
            assert majority_vote(_ballot([V, T, O]), seed=3, article_id=f"x{i}") in (V, T)

    def test_empty_ballot_rejected(self):
        with pytest.raises(EnsembleError):
            majority_vote({})

    def test_scorer_name_permutation_invariance(self):
        rng = np.random.default_rng(12)
        labels = [V, T, O]
        for i in range(300):
            votes = [labels[int(j)] for j in rng.integers(0, 3, size=rng.integers(1, 7))]
            names = [f"s{k}" for k in range(len(votes))]
            ballot = dict(zip(names, votes))
            order = list(range(len(votes)))
            rng.shuffle(order)
            permuted = {names[k]: votes[k] for k in order}
            assert majority_vote(ballot, seed=5, article_id=f"a{i}") == majority_vote(
                permuted, seed=5, article_id=f"a{i}"
            )

    def test_adding_vote_for_winner_keeps_winner(self):
        rng = np.random.default_rng(14)
        labels = [V, T, O]
        for i in range(300):
            votes = [labels[int(j)] for j in rng.integers(0, 3, size=rng.integers(1, 6))]
            ballot = _ballot(votes)
            winner = majority_vote(ballot, seed=8, article_id=f"a{i}")
            extended = _ballot(votes + [winner])
            assert majority_vote(extended, seed=8, article_id=f"a{i}") == winner

    def test_odd_unambiguous_ballot_ignores_seed(self):
        ballot = _ballot([V, V, T])
        assert {majority_vote(ballot, seed=s, article_id="a") for s in range(20)} == {V}


class TestRunEnsemble:
    def test_full_subset(self):
        preds = {
            "nsp": {"a": O, "b": O},
            "ch": {"a": O, "b": T},
            "sts": {"a": V, "b": T},
            "lss": {"a": V, "b": V},
            "gs": {"a": V, "b": T},
            "ms": {"a": V, "b": O},
        }
        out = run_ensemble(preds, ["nsp", "ch", "sts", "lss", "gs", "ms"], seed=1)
        assert out == {"a": V, "b": T}

    def test_three_scorer_subset(self):
        preds = {
            "gs": {"a": V, "b": O},
            "ms": {"a": V, "b": T},
            "ch": {"a": T, "b": O},
            "ignored": {"a": O, "b": O},
        }
        out = run_ensemble(preds, ["gs", "ms", "ch"], seed=1)
        assert out["a"] == V
        # b: O has majority 2 of 3
        assert out["b"] == O

    def test_singleton_subset_is_passthrough(self):
        preds = {"ms": {"a": V, "b": O, "c": T}}
        assert run_ensemble(preds, ["ms"], seed=9) == preds["ms"]

    def test_missing_scorer_fatal(self):
        with pytest.raises(EnsembleError, match="gs"):
            run_ensemble({"ms": {"a": V}}, ["ms", "gs"])

    def test_coverage_mismatch_lists_difference(self):
        preds = {"ms": {"a": V, "b": T}, "gs": {"a": V, "c": T}}
        with pytest.raises(EnsembleError, match="b, c"):
            run_ensemble(preds, ["ms", "gs"])

    def test_output_follows_first_scorer_order(self):
        preds = {
            "ms": {"z": V, "a": T, "m": O},
            "gs": {"a": T, "m": O, "z": V},
        }
        out = run_ensemble(preds, ["ms", "gs"], seed=0)
        assert list(out) == ["z", "a", "m"]
