"""Laplacian and adjacency spectra, eigenvalue sums and spectral combinators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lapsum import _kernels
from lapsum.graph import Graph, GraphError

SOLVER_RTOL = 1e-9


class ConvergenceError(ArithmeticError):
    """The QL iteration exceeded its sweep cap."""


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in non-increasing order with the absolute tolerance they carry."""

    values: np.ndarray
    tol: float

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def allclose(self, other: Spectrum | np.ndarray, atol: float | None = None) -> bool:
        other_values = other.values if isinstance(other, Spectrum) else np.asarray(other, dtype=float)
        if len(other_values) != len(self.values):
            return False
        return bool(np.all(np.abs(self.values - other_values) <= (self.tol if atol is None else atol)))


def laplacian(g: Graph) -> np.ndarray:
    out = np.empty((g.n, g.n))
    _kernels.laplacian_into(g.bit_rows, g.n, out)
    return out


def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, j in g.edges():
        a[i, j] = a[j, i] = 1.0
    return a


def default_tol(m: np.ndarray) -> float:
    norm = float(np.abs(m).sum(axis=1).max()) if m.size else 0.0
    return SOLVER_RTOL * max(1.0, norm)


def sym_eigenvalues(m: np.ndarray, tol: float | None = None) -> Spectrum:
    """All eigenvalues of a symmetric matrix, largest first.

    Householder tridiagonalization followed by implicit-shift QL; raises
    :class:`ConvergenceError` if any eigenvalue needs more than
    ``_kernels.MAX_QL_SWEEPS`` sweeps.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    out = np.empty(m.shape[0])
    if not _kernels.eigvalsh_desc(m, out):
        raise ConvergenceError("QL iteration did not converge")
    return Spectrum(out, default_tol(m) if tol is None else tol)


def laplacian_spectrum(g: Graph) -> Spectrum:
    return sym_eigenvalues(laplacian(g))


def adjacency_spectrum(g: Graph) -> Spectrum:
    return sym_eigenvalues(adjacency(g))


def top_sum(spec: Spectrum | np.ndarray, k: int) -> float:
    """Sum of the ``k`` largest eigenvalues; ``k = 0`` gives 0."""
    values = spec.values if isinstance(spec, Spectrum) else np.asarray(spec)
    if not 0 <= k <= len(values):
        raise ValueError(f"k={k} outside 0..{len(values)}")
    return float(values[:k].sum())


def complement_spectrum(spec: Spectrum, n: int) -> Spectrum:
    """Laplacian spectrum of the complement, from ``mu_i(co-G) = n - mu_{n-i}(G)``."""
    if len(spec) != n:
        raise ValueError(f"spectrum has {len(spec)} values, expected {n}")
    values = np.append(n - spec.values[n - 2 :: -1] if n > 1 else np.empty(0), 0.0)
    return Spectrum(np.sort(values)[::-1].copy(), spec.tol)


def join_spectrum(spec1: Spectrum, n1: int, spec2: Spectrum, n2: int) -> Spectrum:
    """Laplacian spectrum of a join from the spectra of its two sides."""
    values = np.concatenate(
        [[n1 + n2], n1 + spec2.values[: n2 - 1], n2 + spec1.values[: n1 - 1], [0.0]]
    )
    return Spectrum(np.sort(values)[::-1].copy(), max(spec1.tol, spec2.tol))


def interlacing_check(g: Graph, edge: tuple[int, int], tol: float | None = None) -> bool:
    """True iff mu_i(G) >= mu_i(G - e) >= mu_{i+1}(G) for every i."""
    u, v = edge
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not present")
    full = laplacian_spectrum(g)
    minus = laplacian_spectrum(g.remove_edges([edge]))
    eps = max(full.tol, minus.tol) if tol is None else tol
    a, b = full.values, minus.values
    upper = np.all(a >= b - eps)
    lower = np.all(b[:-1] >= a[1:] - eps)
    return bool(upper and lower and abs(b[-1]) <= eps)


def fan_check(b: np.ndarray, c: np.ndarray, k: int) -> tuple[float, float, bool]:
    """Ky Fan: the top-k eigenvalue sum of B + C is at most the sum of those of B and C."""
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    if b.shape != c.shape:
        raise ValueError(f"dimension mismatch {b.shape} vs {c.shape}")
    if not 1 <= k <= b.shape[0]:
        raise ValueError(f"k={k} outside 1..{b.shape[0]}")
    sb, sc, sbc = sym_eigenvalues(b), sym_eigenvalues(c), sym_eigenvalues(b + c)
    lhs = top_sum(sbc, k)
    rhs = top_sum(sb, k) + top_sum(sc, k)
    tol = k * (sb.tol + sc.tol + sbc.tol)
    return lhs, rhs, lhs <= rhs + tol


def bareiss_det(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def char_poly_eval(g: Graph, x: int) -> int:
    """det(xI - L(G)) evaluated exactly at an integer point."""
    degrees = g.degrees()
    m = [
        [
            (x - degrees[i]) if i == j else (1 if g.has_edge(i, j) else 0)
            for j in range(g.n)
        ]
        for i in range(g.n)
    ]
    return bareiss_det(m)
