"""Synthetic treebank generator.

Trees look like constituency parses: phrase nodes branch according to
``branching_weights``, each child turns into a preterminal with a chance
that grows with depth, and every preterminal carries one word leaf drawn
from a Zipf-like vocabulary.
"""

import numpy as np

from src.corpus.numbering import number_nodes
from src.corpus.tree import ROOT_PARENT, Corpus, ParseTree, TreeNode
from src.models.records import GeneratorConfig
from src.utils.errors import GeneratorError
from src.utils.logger import logger


def _rank_weights(n: int, skew: float) -> np.ndarray:
    weights = 1.0 / np.power(np.arange(1, n + 1, dtype=np.float64), skew)
    return weights / weights.sum()


def _branching(cfg: GeneratorConfig) -> np.ndarray:
    weights = np.asarray(cfg.branching_weights, dtype=np.float64)
    if weights.size == 0 or (weights < 0).any() or weights.sum() <= 0:
        raise GeneratorError("branching_weights must be non-negative with a positive sum")
    return weights / weights.sum()


class _TreeGrower:
    def __init__(self, cfg: GeneratorConfig):
        self.cfg = cfg
        self.branching = _branching(cfg)
        self.phrase_p = _rank_weights(len(cfg.phrase_tags), 1.0)
        self.pos_p = _rank_weights(len(cfg.pos_tags), 1.0)
        self.word_p = _rank_weights(cfg.word_count, cfg.word_skew)

    def grow(self, tid: int, rng: np.random.Generator) -> ParseTree:
        nodes: list[TreeNode] = []

        def add(label: str, parent: int) -> int:
            nodes.append(TreeNode(node_id=len(nodes), parent_id=parent, label=label))
            return len(nodes) - 1

        def preterminal(parent: int) -> None:
            tag = self.cfg.pos_tags[int(rng.choice(len(self.cfg.pos_tags), p=self.pos_p))]
            word = int(rng.choice(self.cfg.word_count, p=self.word_p))
            add(f"w{word}", add(tag, parent))

        def phrase(label: str, parent: int, depth: int) -> None:
            me = add(label, parent)
            fanout = int(rng.choice(self.branching.size, p=self.branching)) + 1
            stop = min(1.0, self.cfg.stop_probability + self.cfg.stop_growth * depth)
            for _ in range(fanout):
                if depth + 1 >= self.cfg.max_depth or rng.random() < stop:
                    preterminal(me)
                else:
                    tag = self.cfg.phrase_tags[int(rng.choice(len(self.cfg.phrase_tags), p=self.phrase_p))]
                    phrase(tag, me, depth + 1)

        phrase(self.cfg.phrase_tags[0], ROOT_PARENT, 0)
        return number_nodes(ParseTree(tid=tid, nodes=tuple(nodes)))


def gen_corpus(cfg: GeneratorConfig) -> Corpus:
    """Generate ``cfg.tree_count`` trees with tids ``1..n``.

    Each tree draws from its own generator spawned off ``cfg.seed``, so a
    corpus is a pure function of the configuration.

    Args:
        cfg: Generator parameters

    Returns:
        Numbered corpus; empty when ``tree_count`` is 0

    Raises:
        GeneratorError: branching weights that cannot be sampled.

    """
    grower = _TreeGrower(cfg)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.tree_count)
    trees = [grower.grow(tid, np.random.default_rng(s)) for tid, s in enumerate(seeds, start=1)]
    corpus = Corpus(trees=trees)
    logger.info(f"Generated {len(corpus)} trees ({corpus.node_count} nodes) with seed {cfg.seed}")
    return corpus
