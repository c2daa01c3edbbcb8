from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lapsum.families import complete_split, spider
from lapsum.graph import (
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    join,
    path_graph,
    star_graph,
)
from lapsum.spectra import (
    ConvergenceError,
    adjacency,
    adjacency_spectrum,
    bareiss_det,
    char_poly_eval,
    complement_spectrum,
    fan_check,
    interlacing_check,
    join_spectrum,
    laplacian,
    laplacian_spectrum,
    sym_eigenvalues,
    top_sum,
)
from lapsum.verify import spider2_factor

from test_graph import graphs


def test_laplacian_matrices():
    assert np.array_equal(laplacian(complete_graph(2)), [[1, -1], [-1, 1]])
    assert np.array_equal(laplacian(path_graph(3)), [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    s4 = laplacian(star_graph(4))
    assert np.array_equal(np.diag(s4), [3, 1, 1, 1])
    assert np.array_equal(s4[0, 1:], [-1, -1, -1])
    assert np.array_equal(s4[1:, 1:] - np.diag(np.diag(s4)[1:]), np.zeros((3, 3)))


def test_adjacency_matrices():
    assert np.array_equal(adjacency(complete_graph(2)), [[0, 1], [1, 0]])
    assert np.array_equal(adjacency(empty_graph(2)), np.zeros((2, 2)))
    assert np.array_equal(adjacency(complete_graph(3)), np.ones((3, 3)) - np.eye(3))


def test_known_spectra():
    assert laplacian_spectrum(complete_graph(4)).allclose([4, 4, 4, 0])
    assert laplacian_spectrum(star_graph(5)).allclose([5, 1, 1, 1, 0])
    t62 = laplacian_spectrum(spider(6, 2))
    assert t62.allclose([4.30278, 2.61803, 2.0, 0.69722, 0.38197, 0.0], atol=1e-4)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_laplacian_spectrum_matches_numpy(g):
    spec = laplacian_spectrum(g)
    ref = np.linalg.eigvalsh(laplacian(g))[::-1]
    assert np.allclose(spec.values, ref, atol=1e-9)
    assert np.all(np.diff(spec.values) <= 0)
    assert abs(spec.values[-1]) <= spec.tol
    assert abs(spec.values.sum() - 2 * g.m) <= g.n * spec.tol


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 20)).map(lambda s: (s[0], s[0])),
              elements=st.floats(-100, 100, allow_nan=False)))
def test_symmetric_solver_matches_numpy(a):
    m = (a + a.T) / 2
    ours = sym_eigenvalues(m).values
    ref = np.linalg.eigvalsh(m)[::-1]
    assert np.allclose(ours, ref, atol=1e-9 * max(1.0, np.abs(m).sum(axis=1).max()))


def test_solver_on_64_vertex_graph():
    rng = np.random.default_rng(3)
    a = np.triu((rng.random((64, 64)) < 0.4).astype(float), 1)
    lap = np.diag((a + a.T).sum(axis=1)) - (a + a.T)
    assert np.allclose(sym_eigenvalues(lap).values, np.linalg.eigvalsh(lap)[::-1], atol=1e-9)


def test_solver_rejects_bad_input():
    with pytest.raises(ValueError):
        sym_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_nonfinite_input_rejected():
    with pytest.raises(ValueError):
        sym_eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_nonconvergence_surfaces_as_error(monkeypatch):
    from lapsum import _kernels

    monkeypatch.setattr(_kernels, "eigvalsh_desc", lambda m, out: False)
    with pytest.raises(ConvergenceError):
        laplacian_spectrum(cycle_graph(5))


def test_top_sum_examples():
    assert top_sum(laplacian_spectrum(complete_graph(4)), 2) == pytest.approx(8)
    cs = complete_split(5, 2)
    assert top_sum(laplacian_spectrum(cs), 2) == pytest.approx(cs.m + 3)
    assert top_sum(laplacian_spectrum(star_graph(5)), 1) == pytest.approx(5)
    assert top_sum(laplacian_spectrum(star_graph(5)), 0) == 0
    with pytest.raises(ValueError):
        top_sum(laplacian_spectrum(star_graph(5)), 6)


def test_complement_spectrum_examples():
    spec = complement_spectrum(laplacian_spectrum(star_graph(4)), 4)
    assert spec.allclose([3, 3, 0, 0])
    assert complement_spectrum(laplacian_spectrum(complete_graph(5)), 5).allclose(np.zeros(5))
    c5 = laplacian_spectrum(cycle_graph(5))
    assert complement_spectrum(c5, 5).allclose(c5)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10))
def test_complement_formula_matches_direct_eigensolve(g):
    assert complement_spectrum(laplacian_spectrum(g), g.n).allclose(laplacian_spectrum(complement(g)), 1e-8)


def test_join_spectrum_examples():
    got = join_spectrum(laplacian_spectrum(complete_graph(2)), 2, laplacian_spectrum(empty_graph(3)), 3)
    assert got.allclose([5, 5, 2, 2, 0])
    star = join_spectrum(laplacian_spectrum(empty_graph(1)), 1, laplacian_spectrum(empty_graph(4)), 4)
    assert star.allclose([5, 1, 1, 1, 0])


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_join_formula_matches_direct_eigensolve(g1, g2):
    direct = laplacian_spectrum(join(g1, g2))
    formula = join_spectrum(laplacian_spectrum(g1), g1.n, laplacian_spectrum(g2), g2.n)
    assert formula.allclose(direct, 1e-8)


def test_cone_over_one_vertex_shifts_spectrum():
    g = cycle_graph(5)
    mu = laplacian_spectrum(g).values
    expected = np.sort(np.concatenate([[6], mu[:-1] + 1, [0]]))[::-1]
    assert laplacian_spectrum(join(g, empty_graph(1))).allclose(expected, 1e-8)


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5), star_graph(5)])
def test_interlacing_examples(g):
    assert all(interlacing_check(g, e) for e in g.edges())


def test_fan_examples():
    lhs, rhs, holds = fan_check(np.eye(4), np.eye(4), 3)
    assert (lhs, rhs, holds) == (pytest.approx(6), pytest.approx(6), True)
    g = cycle_graph(6)
    lap, adj = laplacian(g), adjacency(g)
    lhs, rhs, holds = fan_check(lap + adj, -adj, 2)
    assert holds and lhs == pytest.approx(top_sum(laplacian_spectrum(g), 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_fan_random_pairs(seed, k):
    rng = np.random.default_rng(seed)
    b = rng.normal(size=(6, 6))
    c = rng.normal(size=(6, 6))
    assert fan_check(b + b.T, c + c.T, k)[2]


def test_bareiss_examples():
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert bareiss_det([[1, 2], [2, 4]]) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=5, max_size=5))
def test_bareiss_matches_sympy(rows):
    import sympy

    assert bareiss_det(rows) == sympy.Matrix(rows).det()


def test_char_poly_examples():
    assert char_poly_eval(complete_graph(2), 0) == 0
    assert char_poly_eval(complete_graph(2), 3) == 3
    t = spider(10, 2)
    assert char_poly_eval(t, 5) == 5 * 4**4 * spider2_factor(10, 5)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.integers(-4, 9))
def test_char_poly_matches_eigenvalues(g, x):
    mu = laplacian_spectrum(g).values
    assert char_poly_eval(g, x) == pytest.approx(math.prod(x - m for m in mu), abs=1e-6 * (1 + abs(x)) ** g.n)


def test_adjacency_spectrum_of_cycle():
    expected = sorted((2 * math.cos(2 * math.pi * j / 5) for j in range(5)), reverse=True)
    assert adjacency_spectrum(cycle_graph(5)).allclose(expected, 1e-9)
