from .fixtures import agouti_corpus, branching_corpus, symmetric_corpus
from .generator import gen_corpus
from .queries import gen_queries, label_terciles, split_corpus

__all__ = [
    "agouti_corpus",
    "branching_corpus",
    "gen_corpus",
    "gen_queries",
    "label_terciles",
    "split_corpus",
    "symmetric_corpus",
]
