"""vtscreen: screen article records into Vaccine / Therapeutics / Other.

Unsupervised and rule-based scorers over article metadata, a majority
voting ensemble, and an evaluation suite including the 2x2 category
analysis of scorer behavior by task-lexicon presence.
"""

from .corpus import Article, Corpus, Label

__version__ = "0.1.0"

__all__ = ["Article", "Corpus", "Label", "__version__"]
