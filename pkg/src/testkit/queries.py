"""Frequency-class query sets drawn from held-out trees.

Labels are ranked by document frequency (number of trees containing them)
and split into terciles H, M and L. A query of class ``HM`` only uses labels
from the H and M terciles and, when it is large enough, uses both.
"""

from collections import Counter
from collections.abc import Iterable

import numpy as np

from src.corpus.tree import Corpus, ParseTree, TreeNode
from src.models.records import QuerySpec
from src.query.layout import canonical_query
from src.query.nodes import EdgeType, QueryNode
from src.utils.errors import GeneratorError, UnsatisfiableClassError
from src.utils.logger import logger

TERCILES = ("H", "M", "L")


def label_terciles(trees: Iterable[ParseTree]) -> dict[str, str]:
    """Map every label to its document-frequency tercile."""
    df: Counter[str] = Counter()
    for tree in trees:
        df.update(tree.labels)
    ranked = sorted(df, key=lambda label: (-df[label], label))
    tercile_of: dict[str, str] = {}
    for name, chunk in zip(TERCILES, np.array_split(np.arange(len(ranked)), 3)):
        for i in chunk:
            tercile_of[ranked[int(i)]] = name
    return tercile_of


def split_corpus(corpus: Corpus, held_out: float = 0.1, seed: int = 0) -> tuple[Corpus, Corpus]:
    """Split into an indexed part and a held-out part to draw queries from.

    At least one tree is held out when the corpus has two or more trees.
    Both parts keep their tids and stay in tid order.
    """
    if not 0.0 <= held_out <= 1.0:
        raise ValueError(f"held_out must be within 0..1, got {held_out}")
    n = len(corpus)
    count = round(n * held_out)
    if n >= 2:
        count = min(max(count, 1), n - 1)
    picked = set(np.random.default_rng(seed).permutation(n)[:count].tolist())
    indexed = [t for i, t in enumerate(corpus.trees) if i not in picked]
    queries = [t for i, t in enumerate(corpus.trees) if i in picked]
    return Corpus(trees=indexed), Corpus(trees=queries)


class _Sampler:
    def __init__(self, trees: list[ParseTree], tercile_of: dict[str, str], descendant_ratio: float):
        self.trees = trees
        self.tercile_of = tercile_of
        self.descendant_ratio = descendant_ratio

    def draw(self, rng: np.random.Generator, allowed: set[str], size: int) -> QueryNode | None:
        tree = self.trees[int(rng.integers(len(self.trees)))]
        starts = [n for n in tree.nodes if self.tercile_of[n.label] in allowed]
        if not starts:
            return None
        top = starts[int(rng.integers(len(starts)))]
        chosen: dict[int, tuple[int, EdgeType] | None] = {top.pre: None}

        while len(chosen) < size:
            options: list[tuple[TreeNode, int | None, EdgeType]] = []
            if self.descendant_ratio > 0 and rng.random() < self.descendant_ratio:
                options = self._descendant_options(tree, chosen, allowed)
            if not options:
                options = self._child_options(tree, chosen, allowed, top)
            if not options:
                return None
            node, parent, axis = options[int(rng.integers(len(options)))]
            if parent is None:
                chosen[top.pre] = (node.pre, EdgeType.CHILD)
                chosen[node.pre] = None
                top = node
            else:
                chosen[node.pre] = (parent, axis)
        return self._build(tree, chosen, top.pre)

    def _child_options(
        self, tree: ParseTree, chosen: dict, allowed: set[str], top: TreeNode
    ) -> list[tuple[TreeNode, int | None, EdgeType]]:
        options: list[tuple[TreeNode, int | None, EdgeType]] = []
        for pre in chosen:
            node = tree.node_at(pre)
            for kid_id in tree.children[node.node_id]:
                kid = tree.by_id[kid_id]
                if kid.pre not in chosen and self.tercile_of[kid.label] in allowed:
                    options.append((kid, pre, EdgeType.CHILD))
        if top.parent_id in tree.by_id:
            parent = tree.by_id[top.parent_id]
            if self.tercile_of[parent.label] in allowed:
                options.append((parent, None, EdgeType.CHILD))
        return options

    def _descendant_options(
        self, tree: ParseTree, chosen: dict, allowed: set[str]
    ) -> list[tuple[TreeNode, int | None, EdgeType]]:
        options: list[tuple[TreeNode, int | None, EdgeType]] = []
        for pre in chosen:
            node = tree.node_at(pre)
            for below in tree.descendants(node):
                if below.level >= node.level + 2 and below.pre not in chosen:
                    if self.tercile_of[below.label] in allowed:
                        options.append((below, pre, EdgeType.DESCENDANT))
        return options

    @staticmethod
    def _build(tree: ParseTree, chosen: dict[int, tuple[int, EdgeType] | None], root: int) -> QueryNode:
        kids: dict[int, list[tuple[int, EdgeType]]] = {pre: [] for pre in chosen}
        for pre, link in chosen.items():
            if link is not None:
                kids[link[0]].append((pre, link[1]))

        def _node(pre: int) -> QueryNode:
            children = tuple((axis, _node(k)) for k, axis in sorted(kids[pre]))
            return QueryNode(tree.node_at(pre).label, children)

        return canonical_query(_node(root))


def _class_ok(q: QueryNode, tercile_of: dict[str, str], klass: str) -> bool:
    seen: set[str] = set()
    stack = [q]
    while stack:
        node = stack.pop()
        seen.add(tercile_of[node.label])
        stack.extend(child for _, child in node.children)
    return len(seen) >= min(q.size, len(klass))


def gen_queries(corpus: Corpus, spec: QuerySpec, strict: bool = False) -> list[QueryNode]:
    """Draw connected subtrees of ``corpus`` per frequency class and size.

    Args:
        corpus: Trees to draw from (usually the held-out split)
        spec: Classes, sizes, count per pair, seed and ``//`` ratio
        strict: Raise instead of skipping a (class, size) pair that cannot be drawn

    Returns:
        Queries in (class, size) order; a skipped pair contributes nothing

    Raises:
        GeneratorError: the corpus is empty.
        UnsatisfiableClassError: ``strict`` and a pair has no query.

    """
    if not corpus.trees:
        raise GeneratorError("cannot draw queries from an empty corpus")

    tercile_of = label_terciles(corpus.trees)
    sampler = _Sampler(corpus.trees, tercile_of, spec.descendant_ratio)
    rng = np.random.default_rng(spec.seed)
    queries: list[QueryNode] = []
    for klass in spec.classes:
        allowed = set(klass)
        for size in spec.sizes:
            seen: set[str] = set()
            for _ in range(spec.attempts):
                q = sampler.draw(rng, allowed, size)
                if q is None or q.render() in seen or not _class_ok(q, tercile_of, klass):
                    continue
                seen.add(q.render())
                queries.append(q)
                if len(seen) == spec.per_class_size:
                    break
            if len(seen) < spec.per_class_size:
                message = f"class {klass} size {size}: drew {len(seen)} of {spec.per_class_size} queries"
                if strict:
                    raise UnsatisfiableClassError(message)
                logger.warning(f"Skipping unsatisfiable pair, {message}")
    logger.info(f"Generated {len(queries)} queries over {len(spec.classes)} classes")
    return queries
