"""Simple undirected graphs on at most 64 vertices, stored as bit rows."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from lapsum import _kernels

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph construction or encoding."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; bit ``j`` of ``rows[i]`` marks the edge ``ij``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for i, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise GraphError(f"row {i} has bits outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
                r &= r - 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, graph6={write_graph6(self)!r})"

    @cached_property
    def m(self) -> int:
        """Number of edges."""
        return sum(bin(r).count("1") for r in self.rows) // 2

    @cached_property
    def bit_rows(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.uint64)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.n) if self.rows[v] >> j & 1]

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def degrees(self) -> list[int]:
        """Degrees in vertex order (see :func:`degree_sequence` for the sorted form)."""
        return [bin(r).count("1") for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.rows[i] >> j & 1]

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.rows)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"edge ({u}, {v}) not present")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return graph_from_edges(self.n, [*self.edges(), *edges])

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return graph_from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        return graph_from_edges(
            len(vs), [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        )


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices, centre 0."""
    return graph_from_edges(n, [(0, i) for i in range(1, n)])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.rows)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphError(f"union has {n} > {MAX_VERTICES} vertices")
    return Graph(n, g1.rows + tuple(r << g1.n for r in g2.rows))


def join(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphError(f"join has {n} > {MAX_VERTICES} vertices")
    left = (1 << g1.n) - 1
    right = ((1 << g2.n) - 1) << g1.n
    return Graph(n, tuple(r | right for r in g1.rows) + tuple((r << g1.n) | left for r in g2.rows))


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Degrees in non-increasing order."""
    return tuple(sorted(g.degrees(), reverse=True))


def clique_number(g: Graph) -> int:
    return int(_kernels.clique_number(g.bit_rows, g.n))


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def cyclomatic_class(g: Graph) -> int | None:
    """``m - n + 1`` for connected graphs (0 tree, 1 unicyclic, ...), else None."""
    if not is_connected(g):
        return None
    return g.m - g.n + 1


def all_labeled_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph whose edge set is selected by the bits of ``mask`` in graph6 pair order."""
    rows = [0] * n
    for b, (i, j) in enumerate(all_labeled_pairs(n)):
        if mask >> b & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Brute-force isomorphism test with degree pruning; intended for small n."""
    if g1.n != g2.n or g1.m != g2.m or degree_sequence(g1) != degree_sequence(g2):
        return False
    n = g1.n
    d1, d2 = g1.degrees(), g2.degrees()
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or d2[w] != d1[v]:
                continue
            if all(g1.has_edge(u, v) == g2.has_edge(mapping[u], w) for u in range(v)):
                mapping[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        mapping[v] = -1
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def graph6_from_rows(rows: Sequence[int], n: int) -> str:
    """graph6 text straight from adjacency bit rows (upper triangle, column order)."""
    chars = []
    acc = 0
    filled = 0
    for j in range(1, n):
        rj = int(rows[j])
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            filled += 1
            if filled == 6:
                chars.append(chr(63 + acc))
                acc = 0
                filled = 0
    if filled:
        chars.append(chr(63 + (acc << (6 - filled))))
    return _encode_n(n) + "".join(chars)


def write_graph6(g: Graph) -> str:
    return graph6_from_rows(g.rows, g.n)


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(">>"):
        raise GraphError("graph6 header lines ('>>graph6<<') are not supported")
    if not line:
        raise GraphError("empty graph6 line")
    if any(not 63 <= ord(c) <= 126 for c in line):
        raise GraphError("graph6 characters must lie in '?'..'~'")
    if line[0] == "~":
        if len(line) >= 2 and line[1] == "~":
            raise GraphError("graph6 orders above 258047 are not supported")
        if len(line) < 4:
            raise GraphError("truncated graph6 order field")
        n = ((ord(line[1]) - 63) << 12) | ((ord(line[2]) - 63) << 6) | (ord(line[3]) - 63)
        payload = line[4:]
    else:
        n = ord(line[0]) - 63
        payload = line[1:]
    if n == 0 or n > MAX_VERTICES:
        raise GraphError(f"graph6 order {n} outside 1..{MAX_VERTICES}")
    pairs = all_labeled_pairs(n)
    expected = -(-len(pairs) // 6)
    if len(payload) != expected:
        raise GraphError(f"graph6 payload has {len(payload)} chars, expected {expected} for n={n}")
    rows = [0] * n
    for b, (i, j) in enumerate(pairs):
        if (ord(payload[b // 6]) - 63) >> (5 - b % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))

