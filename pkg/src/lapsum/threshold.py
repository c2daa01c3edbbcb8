"""Threshold graphs, conjugate degree sequences and the Ferrers diagram."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from lapsum import _kernels
from lapsum.graph import Graph, degree_sequence
from lapsum.spectra import laplacian_spectrum


@dataclass(frozen=True)
class CreationSequence:
    """0 = add an isolated vertex, 1 = add a dominating vertex; always starts with 0."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.bits:
            raise ValueError("creation sequence is empty")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"creation sequence must be over {{0,1}}: {self.bits}")
        if self.bits[0] != 0:
            raise ValueError("creation sequence must start with 0")

    @classmethod
    def parse(cls, spec: str | Iterable[int]) -> CreationSequence:
        if isinstance(spec, str):
            spec = [int(c) for c in spec.replace(",", "").replace(" ", "")]
        return cls(tuple(int(b) for b in spec))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class ConjugateDegrees:
    values: tuple[int, ...]
    trace: int


@dataclass(frozen=True)
class FerrersParts:
    """Box counts of the head block X, the strip Y below it and the tail Z to its right."""

    n_x: int
    n_y: int
    n_z: int


def _as_sequence(seq: CreationSequence | str | Iterable[int]) -> CreationSequence:
    return seq if isinstance(seq, CreationSequence) else CreationSequence.parse(seq)


def threshold_from_sequence(seq: CreationSequence | str | Iterable[int]) -> Graph:
    """Vertex i is the i-th inserted vertex; 1-vertices dominate all predecessors."""
    seq = _as_sequence(seq)
    n = len(seq)
    rows = [0] * n
    for i, bit in enumerate(seq.bits):
        if bit:
            for j in range(i):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def threshold_recognize(g: Graph) -> CreationSequence | None:
    """Creation sequence of ``g``, or None when ``g`` is not threshold."""
    found = recognize_with_order(g)
    return None if found is None else found[0]


def recognize_with_order(g: Graph) -> tuple[CreationSequence, list[int]] | None:
    """Creation sequence plus the vertex of ``g`` inserted at each position."""
    bits = np.empty(g.n, dtype=np.int8)
    order = np.empty(g.n, dtype=np.int64)
    if not _kernels.strip_threshold(g.bit_rows, g.n, bits, order):
        return None
    return CreationSequence(tuple(int(b) for b in bits)), [int(v) for v in order]


def is_threshold(g: Graph) -> bool:
    return bool(_kernels.is_threshold(g.bit_rows, g.n))


def degree_trace(d: Sequence[int]) -> int:
    """Largest i (1-based) with d_i >= i, or 0."""
    t = 0
    for i, di in enumerate(d, start=1):
        if di >= i:
            t = i
        else:
            break
    return t


def conjugate_degrees(d: Sequence[int]) -> ConjugateDegrees:
    d = list(d)
    if any(a < b for a, b in zip(d, d[1:])):
        raise ValueError("degree sequence must be non-increasing")
    n = len(d)
    values = tuple(sum(1 for dj in d if dj >= i) for i in range(1, n + 1))
    return ConjugateDegrees(values, degree_trace(d))


def conjugate_excess_check(g: Graph) -> tuple[bool, bool]:
    """(d_i + 1 <= d*_i for all i <= T, equality throughout)."""
    d = degree_sequence(g)
    conj = conjugate_degrees(d)
    head = range(conj.trace)
    holds = all(d[i] + 1 <= conj.values[i] for i in head)
    equal = all(d[i] + 1 == conj.values[i] for i in head)
    return holds, equal


def ferrers_parts(g: Graph) -> FerrersParts:
    """Split the Ferrers diagram of d(G) around the trace T.

    X: rows 1..T+1 restricted to columns 1..T, Y: rows below T+1 in columns
    1..T, Z: every box right of column T.  Threshold graphs give
    n_X = T(T+1) and n_Y = n_Z; other graphs get the raw counts.
    """
    d = degree_sequence(g)
    t = degree_trace(d)
    n_x = sum(min(di, t) for di in d[: t + 1])
    n_y = sum(min(di, t) for di in d[t + 1 :])
    n_z = sum(max(di - t, 0) for di in d)
    return FerrersParts(n_x, n_y, n_z)


def is_majorized(a: Sequence[float], b: Sequence[float], tol: float = 0.0) -> bool:
    """True iff ``a`` is majorized by ``b``: prefix sums of a never exceed those of b,
    and the totals agree (both within ``tol``)."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch {len(a)} vs {len(b)}")
    pa = np.cumsum(np.asarray(a, dtype=float))
    pb = np.cumsum(np.asarray(b, dtype=float))
    if len(pa) == 0:
        return True
    return bool(np.all(pa <= pb + tol) and abs(pa[-1] - pb[-1]) <= tol)


def grone_merris_bai_check(g: Graph, tol: float = 1e-6) -> tuple[bool, bool]:
    """(mu(G) majorized by d*(G), mu(G) == d*(G) componentwise)."""
    mu = laplacian_spectrum(g).values
    conj = np.array(conjugate_degrees(degree_sequence(g)).values, dtype=float)
    majorized = is_majorized(mu, conj, tol * g.n)
    equal = bool(np.all(np.abs(mu - conj) <= tol))
    return majorized, equal


def is_split(g: Graph) -> bool:
    """Degree criterion: sum_{i<=T} d_i == T(T-1) + sum_{i>T} d_i."""
    d = degree_sequence(g)
    t = degree_trace(d)
    return sum(d[:t]) == t * (t - 1) + sum(d[t:])


def is_complete_split(g: Graph) -> bool:
    """True iff g is K_k joined with (n-k) isolated vertices for some 0 <= k <= n."""
    d = degree_sequence(g)
    n = g.n
    for k in range(n + 1):
        expected = (n - 1,) * k + (k,) * (n - k)
        if d == expected:
            return True
    return False


def threshold_clique_number(seq: CreationSequence | str | Iterable[int]) -> int:
    return sum(_as_sequence(seq).bits) + 1


def all_sequences(n: int) -> list[CreationSequence]:
    """All 2^(n-1) creation sequences of length n, in binary counting order."""
    return [
        CreationSequence((0,) + tuple((code >> (n - 2 - i)) & 1 for i in range(n - 1)))
        for code in range(1 << (n - 1))
    ]
