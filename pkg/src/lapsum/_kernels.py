"""Compiled kernels shared by the per-graph API and the batch pipeline.

Graphs reach these functions as ``uint64`` adjacency rows (bit ``j`` of
``rows[i]`` set iff ``ij`` is an edge).  Every literal combined with a row
value is wrapped in ``np.uint64``; numba promotes ``uint64 op int64`` to
float64 otherwise.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_EPS = np.finfo(np.float64).eps
MAX_QL_SWEEPS = 60


@njit(cache=True)
def popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def lowest_bit_index(x):
    i = 0
    while ((x >> np.uint64(i)) & _ONE) == _ZERO:
        i += 1
    return i


@njit(cache=True)
def full_mask(n):
    if n >= 64:
        return ~_ZERO
    return (_ONE << np.uint64(n)) - _ONE


# ---------------------------------------------------------------------------
# dense symmetric eigenvalues: Householder reduction + implicit-shift QL
# ---------------------------------------------------------------------------


@njit(cache=True)
def _tridiagonalize(a, d, e):
    """Reduce symmetric ``a`` (overwritten) to tridiagonal (d, e).

    On return ``e[i]`` is the sub-diagonal entry coupling rows i-1 and i;
    ``e[0]`` is zero.
    """
    n = a.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(l + 1):
                scale += abs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                for k in range(l + 1):
                    a[i, k] /= scale
                    h += a[i, k] * a[i, k]
                f = a[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(l + 1):
                    g = 0.0
                    for k in range(j + 1):
                        g += a[j, k] * a[i, k]
                    for k in range(j + 1, l + 1):
                        g += a[k, j] * a[i, k]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        a[j, k] -= f * e[k] + g * a[i, k]
        else:
            e[i] = a[i, l]
    e[0] = 0.0
    for i in range(n):
        d[i] = a[i, i]


@njit(cache=True)
def _ql_implicit(d, e):
    """Eigenvalues of the tridiagonal (d, e) in place; False on non-convergence."""
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    if n > 0:
        e[n - 1] = 0.0
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == MAX_QL_SWEEPS:
                return False
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return True


@njit(cache=True)
def eigvalsh_desc(m, out):
    """Write the eigenvalues of symmetric ``m`` into ``out`` in non-increasing order.

    ``m`` is not modified.  Returns False if the QL iteration hit its cap.
    """
    n = m.shape[0]
    a = np.empty((n, n))
    a[:, :] = m
    d = np.empty(n)
    e = np.zeros(n)
    _tridiagonalize(a, d, e)
    ok = _ql_implicit(d, e)
    d.sort()
    for i in range(n):
        out[i] = d[n - 1 - i]
    return ok


# ---------------------------------------------------------------------------
# combinatorial kernels on bit rows
# ---------------------------------------------------------------------------


@njit(cache=True)
def clique_number(rows, n):
    """Exact clique number by include/exclude branch and bound on bitsets."""
    if n == 0:
        return 0
    stack_p = np.empty(2 * n + 2, dtype=np.uint64)
    stack_s = np.empty(2 * n + 2, dtype=np.int64)
    stack_p[0] = full_mask(n)
    stack_s[0] = 0
    top = 1
    best = 0
    while top > 0:
        top -= 1
        p = stack_p[top]
        size = stack_s[top]
        if p == _ZERO:
            if size > best:
                best = size
            continue
        if size + popcount(p) <= best:
            continue
        v = lowest_bit_index(p)
        vb = _ONE << np.uint64(v)
        stack_p[top] = p & ~vb
        stack_s[top] = size
        top += 1
        stack_p[top] = p & rows[v]
        stack_s[top] = size + 1
        top += 1
    return best


@njit(cache=True)
def strip_threshold(rows, n, bits, order):
    """Peel dominating (preferred) or isolated vertices until one remains.

    On success fills ``bits`` with the creation sequence and ``order`` with the
    vertex inserted at each position, and returns True.
    """
    rem = full_mask(n)
    count = n
    pos = n - 1
    while count > 1:
        chosen = -1
        kind = 0
        r = rem
        while r != _ZERO:
            v = lowest_bit_index(r)
            r &= ~(_ONE << np.uint64(v))
            if popcount(rows[v] & rem) == count - 1:
                chosen = v
                kind = 1
                break
        if chosen < 0:
            r = rem
            while r != _ZERO:
                v = lowest_bit_index(r)
                r &= ~(_ONE << np.uint64(v))
                if popcount(rows[v] & rem) == 0:
                    chosen = v
                    break
        if chosen < 0:
            return False
        bits[pos] = kind
        order[pos] = chosen
        rem &= ~(_ONE << np.uint64(chosen))
        count -= 1
        pos -= 1
    if n > 0:
        bits[0] = 0
        order[0] = lowest_bit_index(rem)
    return True


@njit(cache=True)
def is_threshold(rows, n):
    bits = np.empty(n, dtype=np.int8)
    order = np.empty(n, dtype=np.int64)
    return strip_threshold(rows, n, bits, order)


@njit(cache=True)
def laplacian_into(rows, n, out):
    for i in range(n):
        for j in range(n):
            out[i, j] = 0.0
    for i in range(n):
        r = rows[i]
        out[i, i] = float(popcount(r))
        for j in range(n):
            if (r >> np.uint64(j)) & _ONE:
                out[i, j] = -1.0


@njit(cache=True)
def rows_from_masks(masks, n, pairs_u, pairs_v):
    """Adjacency rows for edge masks; bit b of a mask selects pair (pairs_u[b], pairs_v[b])."""
    count = masks.shape[0]
    rows = np.zeros((count, n), dtype=np.uint64)
    npairs = pairs_u.shape[0]
    for g in range(count):
        mask = masks[g]
        for b in range(npairs):
            if (mask >> np.uint64(b)) & _ONE:
                u = pairs_u[b]
                v = pairs_v[b]
                rows[g, u] |= _ONE << np.uint64(v)
                rows[g, v] |= _ONE << np.uint64(u)
    return rows


@njit(cache=True)
def profile_batch(rows, ns, mu, edges, threshold, omega, ok):
    """Laplacian spectrum, edge count, threshold flag and clique number per graph.

    ``rows`` is (N, width) with row g valid in its first ``ns[g]`` columns;
    ``mu[g, :ns[g]]`` receives the spectrum in non-increasing order.
    """
    count = rows.shape[0]
    width = rows.shape[1]
    scratch = np.zeros((width, width))
    for g in range(count):
        n = ns[g]
        r = rows[g, :n]
        lap = scratch[:n, :n]
        laplacian_into(r, n, lap)
        total = 0
        for i in range(n):
            total += popcount(r[i])
        edges[g] = total // 2
        ok[g] = eigvalsh_desc(lap, mu[g, :n])
        threshold[g] = is_threshold(r, n)
        omega[g] = clique_number(r, n)
