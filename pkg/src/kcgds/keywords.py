"""Keyword extraction from a graph-of-words via the greedy triangle-graph peel."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .densest import greedy_tgds
from .errors import EmptyDocumentError, NoKeywordsError, NoTrianglesError, ParameterError
from .graph import Graph

_TOKEN = re.compile(r"[^\W_]+")


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    text = resources.files("kcgds").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    vocab: dict[str, int]

    def ids(self) -> list[int]:
        return [self.vocab[t] for t in self.tokens]

    def terms(self) -> list[str]:
        """Terms indexed by vocabulary id."""
        out = [""] * len(self.vocab)
        for term, i in self.vocab.items():
            out[i] = term
        return out


def preprocess(text: str, drop_stopwords: bool = False, min_length: int = 1) -> TokenSequence:
    """Lowercase, split on non-alphanumeric runs and filter.

    Tokens shorter than ``min_length`` are dropped, as are stopwords when
    ``drop_stopwords`` is set. Vocabulary ids follow first appearance.
    """
    stop = stopwords() if drop_stopwords else frozenset()
    tokens = tuple(
        tok for tok in _TOKEN.findall(text.lower())
        if len(tok) >= min_length and tok not in stop
    )
    if not tokens:
        raise EmptyDocumentError("no tokens left after preprocessing")
    vocab: dict[str, int] = {}
    for tok in tokens:
        vocab.setdefault(tok, len(vocab))
    return TokenSequence(tokens, vocab)


def graph_of_words(ts: TokenSequence, window: int = 3) -> Graph:
    """Co-occurrence graph: terms at most ``window - 1`` positions apart are linked."""
    if window < 2:
        raise ParameterError(f"window must be at least 2, got {window}")
    ids = np.asarray(ts.ids(), dtype=np.int64)
    pairs = [np.stack([ids[:-d], ids[d:]], axis=1) for d in range(1, min(window, len(ids)))]
    edges = np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(len(ts.vocab), edges)


def extract_keywords(text: str, window: int = 3, drop_stopwords: bool = False,
                     min_length: int = 1) -> list[str]:
    """Terms of the densest triangle-graph subgraph, sorted."""
    try:
        ts = preprocess(text, drop_stopwords, min_length)
    except EmptyDocumentError as exc:
        raise NoKeywordsError(f"no keywords: {exc}") from exc
    g = graph_of_words(ts, window)
    try:
        res = greedy_tgds(g)
    except NoTrianglesError:
        raise NoKeywordsError(
            f"graph-of-words has no triangles with window {window}; try a larger window"
        ) from None
    terms = ts.terms()
    return sorted(terms[v] for v in res.selected)
