"""Graph streams: exhaustive labeled and threshold enumeration, graph6 files."""

from __future__ import annotations

from itertools import combinations
from os import PathLike
from typing import Iterable, Iterator

from lapsum.graph import Graph, GraphError, all_labeled_pairs, graph_from_mask, is_connected, parse_graph6
from lapsum.threshold import all_sequences, threshold_from_sequence

LABELED_CAP = 8


class Graph6FileError(GraphError):
    def __init__(self, path, line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.line = line


def labeled_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def enumerate_labeled(n: int, cap: int = LABELED_CAP) -> Iterator[Graph]:
    """All 2^C(n,2) labeled graphs, ordered by their edge mask."""
    if not 1 <= n <= cap:
        raise ValueError(f"labeled enumeration supports 1 <= n <= {cap}, got {n}")
    for mask in range(labeled_count(n)):
        yield graph_from_mask(n, mask)


def enumerate_labeled_with_edges(n: int, m: int) -> Iterator[Graph]:
    """Labeled graphs on n vertices with exactly m edges."""
    pairs = len(all_labeled_pairs(n))
    for chosen in combinations(range(pairs), m):
        yield graph_from_mask(n, sum(1 << b for b in chosen))


def enumerate_threshold(n: int) -> Iterator[Graph]:
    """Realizations of all 2^(n-1) creation sequences."""
    for seq in all_sequences(n):
        yield threshold_from_sequence(seq)


def filter_c_cyclic(stream: Iterable[Graph], c: int) -> Iterator[Graph]:
    """Connected graphs with e = n + c - 1."""
    if c < 0:
        raise ValueError("c must be non-negative")
    for g in stream:
        if g.m == g.n + c - 1 and is_connected(g):
            yield g


def c_cyclic_labeled(n: int, c: int) -> Iterator[Graph]:
    """Labeled c-cyclic graphs on n vertices without scanning every edge mask."""
    m = n + c - 1
    if m < 0 or m > n * (n - 1) // 2:
        return iter(())
    return filter_c_cyclic(enumerate_labeled_with_edges(n, m), c)


def read_graph6_file(path: str | PathLike) -> Iterator[tuple[int, Graph]]:
    """(line number, graph) for each non-blank line; parse errors name the line."""
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                yield lineno, parse_graph6(text)
            except GraphError as exc:
                raise Graph6FileError(path, lineno, str(exc)) from None
