"""Reader for Penn-style bracketed trees, one tree per line.

``(S (NP (NNS agouti)) (VP (VBZ is)))``: a bracket opens a labeled node whose
children are nested brackets or bare tokens; bare tokens become leaf nodes
labeled by the token itself.
"""

from pathlib import Path

import pyparsing as pp

from src.corpus.numbering import number_nodes
from src.corpus.tree import ROOT_PARENT, Corpus, ParseTree, TreeNode
from src.utils.errors import BracketParseError
from src.utils.logger import logger

LPAR, RPAR = "(", ")"

# Brackets, or a label/word: anything that is not whitespace or a parenthesis
token = pp.Regex(r"\(|\)|[^\s()]+")


def _byte_offset(text: str, loc: int) -> int:
    return len(text[:loc].encode("utf-8"))


def parse_bracketed(text: str, tid: int = 0) -> ParseTree:
    """Parse one bracketed tree.

    Tokens come from a pyparsing scan and nodes are built with an explicit
    stack of open brackets, so nesting depth is not bounded by recursion.
    The result is not numbered yet; run ``number_nodes`` on it (or use
    ``read_bracketed`` which does both).

    Raises:
        BracketParseError: empty input or malformed brackets, with the byte
            offset of the failure.
    """
    if not text.strip():
        raise BracketParseError("empty bracketed input", _byte_offset(text, len(text)))

    nodes: list[TreeNode] = []
    open_ids: list[int] = []
    expect_label = closed = False
    for toks, start, _ in token.scan_string(text):
        tok: str = toks[0]
        if closed:
            raise BracketParseError(f"unexpected {tok!r} after the tree", _byte_offset(text, start))
        if expect_label:
            if tok in (LPAR, RPAR):
                raise BracketParseError(f"expected a label, found {tok!r}", _byte_offset(text, start))
            parent = open_ids[-1] if open_ids else ROOT_PARENT
            nodes.append(TreeNode(node_id=len(nodes), parent_id=parent, label=tok))
            open_ids.append(len(nodes) - 1)
            expect_label = False
        elif tok == LPAR:
            expect_label = True
        elif tok == RPAR:
            if not open_ids:
                raise BracketParseError("unbalanced ')'", _byte_offset(text, start))
            open_ids.pop()
            closed = not open_ids
        elif not open_ids:
            raise BracketParseError(f"expected '(', found {tok!r}", _byte_offset(text, start))
        else:
            nodes.append(TreeNode(node_id=len(nodes), parent_id=open_ids[-1], label=tok))

    if not closed:
        raise BracketParseError(f"{len(open_ids) + expect_label} unclosed bracket(s)", _byte_offset(text, len(text)))
    return ParseTree(tid=tid, nodes=tuple(nodes))


def parse_corpus(text: str) -> Corpus:
    """Parse and number every non-blank line; tids are 1..n in line order."""
    trees: list[ParseTree] = []
    byte_pos = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            tid = len(trees) + 1
            try:
                tree = parse_bracketed(line.rstrip("\r\n"), tid=tid)
            except BracketParseError as e:
                raise BracketParseError(f"tree {tid}: {e.reason}", byte_pos + e.offset) from e
            trees.append(number_nodes(tree))
        byte_pos += len(line.encode("utf-8"))
    return Corpus(trees=trees)


def read_bracketed(path: str | Path) -> Corpus:
    """Read a bracketed corpus file into numbered trees."""
    path = Path(path)
    corpus = parse_corpus(path.read_text(encoding="utf-8"))
    logger.info(f"Parsed {len(corpus)} trees ({corpus.node_count} nodes) from {path}")
    return corpus


def to_bracketed(tree: ParseTree) -> str:
    """Bracketed text of ``tree``; leaves print as bare words."""
    root = tree.root.node_id
    if not tree.children[root]:
        return f"({tree.root.label})"
    parts: list[str] = []
    # Node ids to open, or None for a closing bracket
    stack: list[int | None] = [root]
    while stack:
        node_id = stack.pop()
        if node_id is None:
            parts.append(")")
            continue
        kids = tree.children[node_id]
        if not kids:
            parts.append(f" {tree.by_id[node_id].label}")
            continue
        parts.append(f"{' ' if parts else ''}({tree.by_id[node_id].label}")
        stack.append(None)
        stack.extend(reversed(kids))
    return "".join(parts)
