from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lapsum.graph import (
    Graph,
    clique_number,
    complete_graph,
    cycle_graph,
    degree_sequence,
    empty_graph,
    graph_from_mask,
    isomorphic,
    path_graph,
    star_graph,
)
from lapsum.families import complete_split
from lapsum.spectra import laplacian_spectrum
from lapsum.streams import enumerate_labeled
from lapsum.threshold import (
    CreationSequence,
    FerrersParts,
    all_sequences,
    conjugate_degrees,
    conjugate_excess_check,
    ferrers_parts,
    grone_merris_bai_check,
    is_complete_split,
    is_majorized,
    is_split,
    is_threshold,
    recognize_with_order,
    threshold_clique_number,
    threshold_from_sequence,
    threshold_recognize,
)

from test_graph import graphs

FIGURE_ONE = "00101001"  # threshold graph with degree sequence (7,5,4,3,3,2,1,1)


def has_forbidden_induced(g: Graph) -> bool:
    """Brute force: an induced 2K2, P4 or C4 rules out threshold."""
    for quad in itertools.combinations(range(g.n), 4):
        sub = g.induced(quad)
        if sub.m in (2, 3, 4) and degree_sequence(sub) in ((1, 1, 1, 1), (2, 2, 1, 1), (2, 2, 2, 2)):
            return True
    return False


def brute_split(g: Graph) -> bool:
    for size in range(g.n + 1):
        for clique in itertools.combinations(range(g.n), size):
            rest = [v for v in range(g.n) if v not in clique]
            if all(g.has_edge(u, v) for u, v in itertools.combinations(clique, 2)) and not any(
                g.has_edge(u, v) for u, v in itertools.combinations(rest, 2)
            ):
                return True
    return False


def test_sequence_validation():
    assert str(CreationSequence.parse("0,1 1")) == "011"
    for bad in ("", "1", "012"):
        with pytest.raises(ValueError):
            CreationSequence.parse(bad)


def test_sequence_realizations():
    assert threshold_from_sequence("0111") == complete_graph(4)
    assert isomorphic(threshold_from_sequence("00001"), star_graph(5))
    for n in range(4, 10):
        for t in range(1, n - 2):
            s = n - t - 2
            g = threshold_from_sequence("0" * t + "1" + "0" * s + "1")
            assert g.m == t + n - 1


def test_recognize_examples():
    assert threshold_recognize(path_graph(4)) is None
    assert str(threshold_recognize(star_graph(5))) == "00001"
    fig = threshold_from_sequence(FIGURE_ONE)
    assert str(threshold_recognize(fig)) == FIGURE_ONE
    assert degree_sequence(fig) == (7, 5, 4, 3, 3, 2, 1, 1)


@pytest.mark.parametrize("n", range(1, 12))
def test_recognition_inverts_realization(n):
    for seq in all_sequences(n):
        g = threshold_from_sequence(seq)
        assert threshold_recognize(g) == seq


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 1), min_size=n - 1, max_size=n - 1))),
       st.randoms(use_true_random=False))
def test_recognition_is_label_independent(data, rnd):
    n, tail = data
    g = threshold_from_sequence([0] + tail)
    perm = list(range(n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    seq, order = recognize_with_order(h)
    assert seq == threshold_recognize(g)
    # re-inserting vertices of h in the reported order rebuilds h exactly
    assert threshold_from_sequence(seq).relabel(order) == h


@pytest.mark.parametrize("n", range(1, 7))
def test_threshold_matches_forbidden_subgraph_oracle(n):
    count = 0
    for g in enumerate_labeled(n):
        thr = is_threshold(g)
        assert thr == (not has_forbidden_induced(g))
        count += thr
    # labeled threshold graphs: compare with the brute-force tally, not a table
    brute = sum(1 for mask in range(1 << (n * (n - 1) // 2)) if not has_forbidden_induced(graph_from_mask(n, mask)))
    assert count == brute


def test_conjugate_degrees_examples():
    c = conjugate_degrees((7, 5, 4, 3, 3, 2, 1, 1))
    assert c.values == (8, 6, 5, 3, 2, 1, 1, 0) and c.trace == 3
    c = conjugate_degrees((2, 2, 2, 2))
    assert c.values == (4, 4, 0, 0) and c.trace == 2
    c = conjugate_degrees((0, 0, 0))
    assert c.values == (0, 0, 0) and c.trace == 0
    with pytest.raises(ValueError):
        conjugate_degrees((1, 2))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_conjugate_degree_invariants(g):
    conj = conjugate_degrees(degree_sequence(g))
    assert conj.values[-1] == 0
    assert sum(conj.values) == 2 * g.m
    parts = ferrers_parts(g)
    assert parts.n_x + parts.n_y + parts.n_z == 2 * g.m


def test_conjugate_excess_examples():
    assert conjugate_excess_check(threshold_from_sequence(FIGURE_ONE)) == (True, True)
    assert conjugate_excess_check(cycle_graph(4)) == (True, False)
    assert conjugate_excess_check(complete_graph(6)) == (True, True)


def test_ferrers_examples():
    assert ferrers_parts(threshold_from_sequence(FIGURE_ONE)) == FerrersParts(12, 7, 7)
    assert ferrers_parts(complete_graph(3)) == FerrersParts(6, 0, 0)
    assert ferrers_parts(star_graph(5)) == FerrersParts(2, 3, 3)


def test_majorization_examples():
    assert is_majorized((2, 1, 1), (2, 2, 0))
    assert not is_majorized((3, 1, 0), (2, 2, 0))
    mu = laplacian_spectrum(cycle_graph(4)).values
    assert is_majorized(mu, (4, 4, 0, 0), 1e-9)
    with pytest.raises(ValueError):
        is_majorized((1,), (1, 0))


def test_grone_merris_bai_examples(atlas7):
    assert grone_merris_bai_check(complete_graph(4)) == (True, True)
    assert grone_merris_bai_check(cycle_graph(5)) == (True, False)
    for g in atlas7:
        majorized, equal = grone_merris_bai_check(g)
        assert majorized
        assert equal == is_threshold(g)


def test_split_examples():
    cs = complete_split(5, 2)
    assert is_split(cs) and is_complete_split(cs)
    assert is_split(path_graph(4)) and not is_complete_split(path_graph(4))
    assert not is_split(cycle_graph(5))
    assert not is_split(cycle_graph(4))
    assert is_complete_split(empty_graph(4)) and is_complete_split(complete_graph(4))


def test_split_matches_partition_search(atlas7):
    for g in atlas7:
        if g.n <= 6:
            assert is_split(g) == brute_split(g)


def test_threshold_clique_number():
    assert threshold_clique_number("0001") == 2
    assert threshold_clique_number("0111") == 4
    assert threshold_clique_number("0101") == 3
    for seq in all_sequences(8):
        assert threshold_clique_number(seq) == clique_number(threshold_from_sequence(seq))


def test_all_sequences_counts():
    assert len(all_sequences(1)) == 1
    assert len(all_sequences(10)) == 512
    assert {str(s) for s in all_sequences(3)} == {"000", "001", "010", "011"}
