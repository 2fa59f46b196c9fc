from .bracketed import parse_bracketed, parse_corpus, read_bracketed, to_bracketed
from .datafile import DataFileReader, read_tree, write_data_file
from .numbering import number_nodes
from .stats import corpus_stats
from .tree import ROOT_PARENT, Corpus, ParseTree, TreeNode

__all__ = [
    "ROOT_PARENT",
    "Corpus",
    "DataFileReader",
    "ParseTree",
    "TreeNode",
    "corpus_stats",
    "number_nodes",
    "parse_bracketed",
    "parse_corpus",
    "read_bracketed",
    "read_tree",
    "to_bracketed",
    "write_data_file",
]
