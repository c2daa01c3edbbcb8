"""Generators for the named graph families, each with closed-form facts attached."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from lapsum.graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    complete_graph,
    empty_graph,
    graph_from_edges,
    join,
)
from lapsum.threshold import threshold_from_sequence


@dataclass(frozen=True)
class NestedSplitParams:
    """Clique K_k, r vertices joined to the whole clique, and len(a) vertices
    whose neighbourhoods are the first a_i clique vertices (k > a_1 >= a_2 >= ...)."""

    k: int
    r: int
    a: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.k < 1 or self.r < 1:
            raise GraphError(f"need k >= 1 and r >= 1, got k={self.k}, r={self.r}")
        if self.n > MAX_VERTICES:
            raise GraphError(f"n = {self.n} exceeds {MAX_VERTICES}")
        if any(not 0 <= ai < self.k for ai in self.a):
            raise GraphError(f"each a_i must satisfy 0 <= a_i < k={self.k}: {self.a}")
        if any(x < y for x, y in zip(self.a, self.a[1:])):
            raise GraphError(f"a must be non-increasing: {self.a}")

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return self.k + self.r + len(self.a)

    @property
    def edge_count(self) -> int:
        return comb(self.k, 2) + self.k * self.r + sum(self.a)


def complete_split(n: int, k: int) -> Graph:
    """K_k joined with (n - k) isolated vertices; clique on vertices 0..k-1."""
    if not 1 <= k < n:
        raise GraphError(f"need 1 <= k < n, got n={n}, k={k}")
    return join(complete_graph(k), empty_graph(n - k))


def complete_split_spectrum(n: int, k: int) -> list[float]:
    return [float(n)] * k + [float(k)] * (n - k - 1) + [0.0]


def nested_split_graph(k: int, r: int, a: Sequence[int] = ()) -> Graph:
    """Threshold graph with clique number k + 1 attaining the Brouwer bound at k."""
    p = NestedSplitParams(k, r, tuple(a))
    edges = [(i, j) for i in range(p.k) for j in range(i + 1, p.k)]
    edges += [(i, p.k + j) for j in range(p.r) for i in range(p.k)]
    base = p.k + p.r
    for idx, size in enumerate(p.a):
        edges += [(i, base + idx) for i in range(size)]
    return graph_from_edges(p.n, edges)


def two_dominator_graph(s: int, t: int) -> Graph:
    """Realization of 0^t 1 0^s 1: the connected threshold graphs with clique number 3.

    n = s + t + 2 and e = t + n - 1; (n-3, 1) is a triangle with n-3 pendants
    at one vertex, (n-4, 2) is K_4 minus an edge with n-4 pendants.
    """
    if t < 1 or s < 0:
        raise GraphError(f"need t >= 1 and s >= 0, got s={s}, t={t}")
    if s + t + 2 > MAX_VERTICES:
        raise GraphError(f"n = {s + t + 2} exceeds {MAX_VERTICES}")
    return threshold_from_sequence((0,) * t + (1,) + (0,) * s + (1,))


def spider(n: int, i: int) -> Graph:
    """Tree with centre 0, i legs of length 2 and n - 1 - 2i pendant legs."""
    if i < 0 or 2 * i > n - 1:
        raise GraphError(f"need 0 <= i <= (n-1)/2, got n={n}, i={i}")
    edges = []
    v = 1
    for _ in range(i):
        edges += [(0, v), (v, v + 1)]
        v += 2
    edges += [(0, w) for w in range(v, n)]
    return graph_from_edges(n, edges)


def _cycle_edges(vertices: list[int]) -> list[tuple[int, int]]:
    return [(vertices[j], vertices[(j + 1) % len(vertices)]) for j in range(len(vertices))]


def infinity_graph(p: int, l: int, q: int) -> Graph:
    """Cycles C_p and C_q linked by a path on l vertices whose ends lie on the cycles.

    l = 1 means the cycles share a vertex.  n = p + q + l - 2, e = n + 1.
    """
    if not (p >= q >= 3 and l >= 1):
        raise GraphError(f"need p >= q >= 3 and l >= 1, got ({p}, {l}, {q})")
    n = p + q + l - 2
    if n > MAX_VERTICES:
        raise GraphError(f"n = {n} exceeds {MAX_VERTICES}")
    path = list(range(l))  # path[0] on C_p, path[-1] on C_q
    cp = [path[0]] + list(range(l, l + p - 1))
    cq = [path[-1]] + list(range(l + p - 1, n))
    edges = _cycle_edges(cp) + _cycle_edges(cq)
    edges += [(path[j], path[j + 1]) for j in range(l - 1)]
    return graph_from_edges(n, edges)


def theta_graph(p: int, l: int, q: int) -> Graph:
    """Hubs 0 and 1 joined by internally disjoint paths with p, l and q edges."""
    if not (p >= q >= l >= 1):
        raise GraphError(f"need p >= q >= l >= 1, got ({p}, {l}, {q})")
    if q == 1:
        raise GraphError("two paths of length 1 would be a parallel edge")
    n = p + l + q - 1
    if n > MAX_VERTICES:
        raise GraphError(f"n = {n} exceeds {MAX_VERTICES}")
    edges = []
    nxt = 2
    for length in (p, l, q):
        inner = list(range(nxt, nxt + length - 1))
        nxt += length - 1
        chain = [0] + inner + [1]
        edges += [(chain[j], chain[j + 1]) for j in range(length)]
    return graph_from_edges(n, edges)


def cone_over(g: Graph, q: int) -> Graph:
    """G joined with q isolated vertices; e = e(G) + n(G) q."""
    if q < 1:
        raise GraphError(f"need q >= 1, got {q}")
    return join(g, empty_graph(q))
