"""Majority voting over scorer predictions.

Each scorer casts one label per article. The label with strictly the most
votes wins. Ties prefer a positive class over Other; a tie between the
two positive classes is broken uniformly at random by a generator keyed
on (seed, article id), so outcomes are reproducible and independent of
the order articles are processed in. A three-way tie drops Other first
and then breaks the positive tie the same way.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .corpus import Label
from .detrng import keyed_rng

Ballot = Mapping[str, Label]


class EnsembleError(ValueError):
    pass


def majority_vote(ballot: Ballot, seed: int = 0, article_id: str = "") -> Label:
    """Resolve one ballot (scorer name to label, at least one vote)."""
    if not ballot:
        raise EnsembleError("empty ballot")
    counts = {Label.VACCINE: 0, Label.THERAPEUTICS: 0, Label.OTHER: 0}
    for vote in ballot.values():
        counts[vote] += 1
    best = max(counts.values())
    winners = [label for label, c in counts.items() if c == best]
    if len(winners) == 1:
        return winners[0]
    positives = [label for label in winners if label.is_positive]
    if len(positives) == 1:
        return positives[0]
    pick = keyed_rng(seed, article_id).below(2)
    return Label.VACCINE if pick == 0 else Label.THERAPEUTICS


def run_ensemble(
    predictions: Mapping[str, Mapping[str, Label]],
    subset: Sequence[str],
    seed: int = 0,
) -> dict[str, Label]:
    """Majority-vote the given scorers article by article.

    All subset scorers must be present and must cover the same article
    ids. Output order follows the first subset scorer's prediction order.
    """
    if not subset:
        raise EnsembleError("empty scorer subset")
    missing = [name for name in subset if name not in predictions]
    if missing:
        raise EnsembleError("missing scorer predictions: " + ", ".join(missing))

    reference = predictions[subset[0]]
    ref_ids = set(reference)
    for name in subset[1:]:
        ids = set(predictions[name])
        if ids != ref_ids:
            diff = sorted(ids.symmetric_difference(ref_ids))
            raise EnsembleError(
                f"scorers {subset[0]!r} and {name!r} cover different articles: "
                + ", ".join(diff)
            )

    out: dict[str, Label] = {}
    for article_id in reference:
        ballot = {name: predictions[name][article_id] for name in subset}
        out[article_id] = majority_vote(ballot, seed=seed, article_id=article_id)
    return out
