"""Hand-built trees and queries with known answers."""

from src.corpus.bracketed import parse_corpus
from src.corpus.tree import Corpus

# 11-node query over "The agouti is a burrowing rodent"
AGOUTI_QUERY = "S(NP(NNS(agouti)))(VP(VBZ(is))(NP(DT(a))(NN)))"
AGOUTI_SENTENCE = "(S (NP (DT The) (NNS agouti)) (VP (VBZ is) (NP (DT a) (JJ burrowing) (NN rodent))) (. .))"
# Same words, but the object NP is nested one level deeper
AGOUTI_NEAR_MISS = (
    "(S (NP (DT The) (NNS agouti)) (VP (VBZ is) (NP (NP (DT a) (NN rodent)) (PP (IN of) (NP (NNP Brazil))))))"
)

AGOUTI_OPTIMAL_COVER = frozenset({"NP(NNS(agouti))", "NP(DT(a))", "VP(VBZ(is))", "VP(NP(NN))", "S(NP(NNS))"})
AGOUTI_MIN_RC = frozenset({"NP(NNS(agouti))", "NP(DT(a))", "NP(DT)(NN)", "VP(VBZ(is))", "S(NP(NNS))"})

BRANCHING_QUERY = "A(B(C(D)(E)(F)))"
BRANCHING_MATCH = "(A (B (C D E F)))"
# D under one C and E, F under another: root-only joins of pieces that
# disagree on C would report a match here
BRANCHING_SPLIT_C = "(A (B (C D) (C E F)))"
BRANCHING_DECOY = "(A (B D E) (C D E F))"
BRANCHING_ANOMALOUS_COVER = ("A(B(C(D)))", "B(C(E)(F))")
BRANCHING_MIN_RC = frozenset({"A(B(C(D)))", "B(C(E)(F))", "C(D)(E)(F)"})

SYMMETRIC_TREE = "(NP NN NN NN)"


def agouti_corpus() -> Corpus:
    """The matching sentence (tid 1) and the near miss (tid 2)."""
    return parse_corpus("\n".join([AGOUTI_SENTENCE, AGOUTI_NEAR_MISS]))


def branching_corpus() -> Corpus:
    """One true match (tid 1) followed by two trees that only look like one."""
    return parse_corpus("\n".join([BRANCHING_MATCH, BRANCHING_SPLIT_C, BRANCHING_DECOY]))


def symmetric_corpus() -> Corpus:
    return parse_corpus(SYMMETRIC_TREE)
