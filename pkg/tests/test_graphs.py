import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from graphhomology.exactlinalg import LinComb
from graphhomology import graphs
from graphhomology.graphs import (
    BadVertexError,
    Graph,
    NoSuchEdgeError,
    OrientedEdgeList,
    SizeMismatchError,
    UNIT,
    canonicalize,
    connected_components,
    contract,
    differential,
    disjoint_union,
    enumerate_graphs,
    graph,
    graph_from_record,
    graph_to_record,
    lie_class,
    lie_differential,
    lincomb_from_records,
    lincomb_to_records,
    sigma_act,
    valences,
)

G_EX = graph(3, [(1, 2), (1, 2), (1, 3), (2, 3)])
TRIPLE = graph(2, [(1, 2), (1, 2), (1, 2)])
DOUBLE = graph(2, [(1, 2), (1, 2)])


def brute_force_graphs(n, max_edges):
    """Independent enumeration: multiplicity vectors over all vertex pairs."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out = []
    for mults in itertools.product(range(max_edges + 1), repeat=len(pairs)):
        if sum(mults) > max_edges:
            continue
        edges = []
        for pair, k in zip(pairs, mults):
            edges.extend([pair] * k)
        out.append(graph(n, edges))
    return sorted(set(out))


def test_canonicalize_single_flip():
    assert canonicalize(OrientedEdgeList(2, ((2, 1),))) == \
        LinComb.of(graph(2, [(1, 2)]), -1)


def test_canonicalize_loop_annihilates():
    assert canonicalize(OrientedEdgeList(1, ((1, 1),))).is_zero()


def test_canonicalize_worked_flip_count():
    src = OrientedEdgeList(3, ((1, 3), (1, 2), (2, 1), (2, 3)))
    assert canonicalize(src) == LinComb.of(G_EX, -1)


def test_canonicalize_bad_vertex():
    with pytest.raises(BadVertexError):
        canonicalize(OrientedEdgeList(2, ((1, 3),)))


def test_canonicalize_idempotent_on_canonical_input():
    for g in enumerate_graphs(3, 3):
        again = canonicalize(OrientedEdgeList(g.n, g.edges))
        assert again == LinComb.of(g)


def test_contract_worked_examples():
    assert contract(G_EX, (1, 3)) == LinComb.of(TRIPLE)
    assert contract(DOUBLE, (1, 2)).is_zero()
    g4 = graph(4, [(1, 4), (1, 3), (2, 4), (2, 3), (3, 4)])
    assert contract(g4, (1, 4)) == \
        LinComb.of(graph(3, [(1, 2), (1, 3), (1, 3), (2, 3)]))
    with pytest.raises(NoSuchEdgeError):
        contract(DOUBLE, (1, 3))


def test_differential_frozen_values():
    # the two surviving contractions of the double-and-triangle graph carry
    # opposite re-orientation signs and cancel exactly
    assert differential(LinComb.of(G_EX)).is_zero()
    # single edge: one term, no signs
    assert differential(LinComb.of(graph(2, [(1, 2)]))) == LinComb.of(graph(1, []))
    # double edge: both contractions loop out
    assert differential(LinComb.of(DOUBLE)).is_zero()
    # one bivalent chain of length two
    f2 = graph(4, [(1, 2), (1, 2), (1, 3), (2, 4), (3, 4)])
    assert differential(LinComb.of(f2)) == LinComb.of(G_EX, -1)
    # triangle contracts to the double edge with total +1
    assert differential(LinComb.of(graph(3, [(1, 2), (1, 3), (2, 3)]))) == \
        LinComb.of(DOUBLE)


def test_differential_squares_to_zero_small():
    for n in range(1, 5):
        for g in enumerate_graphs(n, 6):
            assert differential(differential(LinComb.of(g))).is_zero(), g


def test_differential_degree_drop():
    for n in range(2, 5):
        for g in enumerate_graphs(n, 5):
            for term, _ in differential(LinComb.of(g)).items():
                assert term.n == g.n - 1
                assert len(term.edges) == len(g.edges) - 1


def test_disjoint_union_unit_and_worked():
    assert disjoint_union(UNIT, G_EX) == G_EX
    assert disjoint_union(G_EX, UNIT) == G_EX
    assert disjoint_union(DOUBLE, DOUBLE) == \
        graph(4, [(1, 2), (1, 2), (3, 4), (3, 4)])


def test_disjoint_union_associative_random():
    rng = random.Random(2)
    pool = enumerate_graphs(3, 3) + enumerate_graphs(2, 2)
    for _ in range(100):
        a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        assert disjoint_union(disjoint_union(a, b), c) == \
            disjoint_union(a, disjoint_union(b, c))


def test_connected_components_worked():
    assert connected_components(G_EX) == [G_EX]
    h = graph(4, [(1, 2), (1, 2), (3, 4), (3, 4)])
    assert connected_components(h) == [DOUBLE, DOUBLE]
    assert connected_components(UNIT) == []


def test_components_preserve_size_and_edges():
    # components of an arbitrary graph may interleave label-wise, so the
    # ordered union only recovers graphs whose components are label blocks;
    # sizes and edge counts are preserved unconditionally
    for n in range(0, 5):
        for g in enumerate_graphs(n, 4):
            comps = connected_components(g)
            assert sum(c.n for c in comps) == g.n
            assert sum(len(c.edges) for c in comps) == len(g.edges)


def test_interleaved_components_standardize():
    g = graph(4, [(1, 3), (1, 3), (2, 4), (2, 4)])
    assert connected_components(g) == [DOUBLE, DOUBLE]


def test_components_round_trip_on_assembled():
    rng = random.Random(3)
    pool = [g for n in range(1, 4) for g in enumerate_graphs(n, 3, connected_only=True)]
    for _ in range(200):
        parts = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        g = UNIT
        for p in parts:
            g = disjoint_union(g, p)
        assert connected_components(g) == parts


def test_sigma_act_identity_and_size_check():
    assert sigma_act((1, 2, 3), G_EX) == LinComb.of(G_EX)
    with pytest.raises(SizeMismatchError):
        sigma_act((1, 2), G_EX)


def test_sigma_act_transposition_reorients_single_edge():
    # sgn(-1) times one reversed edge (-1) gives +1 overall
    k2 = graph(2, [(1, 2)])
    assert sigma_act((2, 1), k2) == LinComb.of(k2)
    # with an even number of edges between the swapped labels the sgn survives
    assert sigma_act((2, 1), DOUBLE) == LinComb.of(DOUBLE, -1)


@settings(max_examples=80, derandomize=True)
@given(st.integers(0, 120), st.integers(0, 120), st.integers(0, 30))
def test_sigma_act_composition_law(i, j, k):
    perms = list(itertools.permutations((1, 2, 3, 4, 5)))
    sigma = perms[i]
    tau_ = perms[j]
    pool = enumerate_graphs(5, 3)
    g = pool[k % len(pool)]
    composed = tuple(sigma[tau_[x - 1] - 1] for x in range(1, 6))
    step = sigma_act(tau_, g).mapped(lambda h: sigma_act(sigma, h))
    assert step == sigma_act(composed, g)


def test_lie_class_values():
    # the swap fixes the single edge with total sign +1 (sgn x one flip)
    k2 = graph(2, [(1, 2)])
    assert lie_class(k2) == LinComb.of(graphs.GraphClass(k2))
    assert lie_class(TRIPLE) == LinComb.of(graphs.GraphClass(TRIPLE))
    # two isolated vertices: the swap is odd and reverses nothing
    assert lie_class(graph(2, [])).is_zero()
    tet = graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert lie_class(tet) == LinComb.of(graphs.GraphClass(tet))


def test_lie_class_orbit_consistency():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(1, 4)
        g = rng.choice(enumerate_graphs(n, 4))
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        acted = sigma_act(tuple(perm), g)
        assert acted.mapped(lie_class) == lie_class(g)


def test_lie_differential_square_and_commutation():
    for n in range(1, 5):
        for g in enumerate_graphs(n, 5):
            cls = lie_class(g)
            assert differential(LinComb.of(g)).mapped(lie_class) == \
                lie_differential(cls)
            assert lie_differential(lie_differential(cls)).is_zero()


def test_enumerate_worked_cases():
    assert enumerate_graphs(2, 3, min_valence=2) == [DOUBLE, TRIPLE]
    assert enumerate_graphs(1, 5) == [graph(1, [])]
    assert enumerate_graphs(1, 5, min_valence=1) == []


def test_enumerate_against_brute_force():
    for n in range(1, 5):
        mine = enumerate_graphs(n, 3)
        assert mine == brute_force_graphs(n, 3)
        assert len(mine) == len(set(mine))


def test_enumerate_filters():
    for g in enumerate_graphs(4, 5, min_valence=2, connected_only=True):
        assert min(valences(g)) >= 2
        assert len(connected_components(g)) == 1


def test_records_round_trip():
    rec = graph_to_record(G_EX)
    assert rec == {"n": 3, "edges": [[1, 2], [1, 2], [1, 3], [2, 3]]}
    assert graph_from_record(rec) == G_EX
    x = LinComb.of(G_EX, "2/3") + LinComb.of(TRIPLE, -2)
    assert lincomb_from_records(lincomb_to_records(x)) == x
