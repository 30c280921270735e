import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from graphhomology.exactlinalg import LinComb
from graphhomology.bialgebra import (
    EmptyLeftError,
    LEAF,
    MagSeries,
    NonzeroConstantTermError,
    UnitInputError,
    check_compatibility,
    check_interchange,
    check_interchange_signed,
    check_zinbiel_coalgebra,
    cohalf_shuffle,
    full_coproduct,
    halfshuffle,
    identity_series,
    left_comb,
    mag_compose,
    primitive_projector,
    reduced_cohalf_shuffle,
    right_comb,
    series_f,
    series_g,
    shuffle_words,
    star_product,
    tree_degree,
    word_cohalf_pq,
)
from graphhomology.graphs import (
    UNIT,
    assemble,
    disjoint_union,
    enumerate_graphs,
    graph,
)
from graphhomology.symplectic import word_from_strings

H1 = graph(2, [(1, 2), (1, 2)])
H = disjoint_union(H1, H1)
W_EX = word_from_strings(["p1 p2 p3", "q1 q2 p4", "q3 q4"])


def component_pool():
    pool = []
    for n in range(1, 4):
        pool.extend(enumerate_graphs(n, 3, connected_only=True))
    return pool


def products_up_to(pool, max_components):
    out = []
    frontier = [UNIT]
    for _ in range(max_components):
        frontier = [disjoint_union(g, c) for g in frontier for c in pool]
        out.extend(frontier)
    return out


def test_cohalf_connected():
    g = graph(3, [(1, 2), (1, 3), (2, 3)])
    assert cohalf_shuffle(g) == LinComb.of((g, UNIT))


def test_cohalf_two_equal_components():
    # one split keeps both components left, one passes the second right
    assert cohalf_shuffle(H) == LinComb.of((H, UNIT)) + LinComb.of((H1, H1))


def test_cohalf_three_distinct_components():
    g1 = graph(3, [(1, 3), (1, 3), (1, 2), (2, 3)])
    g2 = H1
    g3 = graph(3, [(1, 2), (1, 3), (1, 3), (1, 3), (2, 3)])
    prod = assemble([g1, g2, g3])
    expected = (LinComb.of((prod, UNIT))
                + LinComb.of((g1, disjoint_union(g2, g3)))
                + LinComb.of((disjoint_union(g1, g2), g3))
                + LinComb.of((disjoint_union(g1, g3), g2)))
    assert cohalf_shuffle(prod) == expected


def test_cohalf_unit_rejected():
    with pytest.raises(UnitInputError):
        cohalf_shuffle(UNIT)


def test_zinbiel_coalgebra_exhaustive():
    pool = component_pool()
    for g in products_up_to(pool, 3):
        ok, defect = check_zinbiel_coalgebra(g)
        assert ok, (g, defect)


def test_zinbiel_coalgebra_negative_control():
    # dropping one shuffle term breaks the law on a three-component product
    g = assemble([H1, H1, graph(1, [])])
    red = reduced_cohalf_shuffle(g)
    [first] = sorted(red.keys())[:1]
    corrupted = red - LinComb.of(first, red.coeff(first))

    def left_expand(pair):
        a, b = pair
        return reduced_cohalf_shuffle(a).map_keys(lambda lr: (lr[0], lr[1], b))

    lhs = corrupted.mapped(left_expand)
    from graphhomology.bialgebra import tau
    rhs = (corrupted.mapped(lambda p: (reduced_cohalf_shuffle(p[1])
                                       .map_keys(lambda lr: (p[0], lr[0], lr[1]))))
           + corrupted.mapped(lambda p: (tau(reduced_cohalf_shuffle(p[1]))
                                         .map_keys(lambda lr: (p[0], lr[0], lr[1])))))
    assert lhs != rhs


def test_compatibility_unit_cases():
    assert check_compatibility(UNIT, H1)[0]
    assert check_compatibility(H1, UNIT)[0]


def test_compatibility_exhaustive_pairs():
    pool = component_pool()
    two = [UNIT] + products_up_to(pool, 2)
    sample = two[::3]
    for a in sample:
        for b in sample:
            ok, defect = check_compatibility(a, b)
            assert ok, (a, b, defect)


def test_projector_fixes_connected_kills_products():
    g = graph(3, [(1, 2), (1, 3), (2, 3)])
    assert primitive_projector(LinComb.of(g)) == LinComb.of(g)
    assert primitive_projector(LinComb.of(disjoint_union(g, H1))).is_zero()
    assert primitive_projector(LinComb.of(H)).is_zero()


def test_projector_idempotent_random():
    rng = random.Random(13)
    pool = component_pool()
    prods = products_up_to(pool, 4)
    for _ in range(100):
        x = LinComb.zero()
        for _ in range(rng.randint(1, 3)):
            x = x + LinComb.of(rng.choice(prods), rng.randint(-2, 2))
        once = primitive_projector(x)
        assert primitive_projector(once) == once


def test_projector_kernel_and_image():
    from graphhomology.graphs import connected_components

    pool = component_pool()
    for g in products_up_to(pool, 3):
        image = primitive_projector(LinComb.of(g))
        if len(connected_components(g)) == 1:
            assert image == LinComb.of(g)
        else:
            assert image.is_zero()


def test_halfshuffle_values():
    assert halfshuffle(("a",), ("b",)) == LinComb.of(("a", "b"))
    assert halfshuffle(("a", "b"), ("c",)) == \
        LinComb.of(("a", "b", "c")) + LinComb.of(("a", "c", "b"))
    with pytest.raises(EmptyLeftError):
        halfshuffle((), ("a",))


@settings(max_examples=100, derandomize=True)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=2),
       st.lists(st.sampled_from("abc"), min_size=1, max_size=2),
       st.lists(st.sampled_from("abc"), min_size=1, max_size=2))
def test_halfshuffle_zinbiel_law(x, y, z):
    x, y, z = tuple(x), tuple(y), tuple(z)
    lhs = halfshuffle(x, y).mapped(lambda u: halfshuffle(u, z))
    rhs = star_product(y, z).mapped(lambda v: halfshuffle(x, v))
    assert lhs == rhs


def test_star_product_commutative_associative():
    rng = random.Random(14)
    letters = "abc"
    for _ in range(40):
        words = [tuple(rng.choice(letters) for _ in range(rng.randint(1, 2)))
                 for _ in range(3)]
        x, y, z = words
        assert star_product(x, y) == star_product(y, x)
        lhs = star_product(x, y).mapped(lambda u: star_product(u, z))
        rhs = star_product(y, z).mapped(lambda v: star_product(x, v))
        assert lhs == rhs


def test_shuffle_multiplicity():
    assert shuffle_words(("a",), ("a",)) == LinComb.of(("a", "a"), 2)


def test_series_terms():
    f = series_f(3)
    g = series_g(3)
    assert f.term_map()[3] == LinComb.of((LEAF, (LEAF, LEAF)))
    assert g.term_map()[3] == LinComb.of(((LEAF, LEAF), LEAF))
    assert g.term_map()[2] == LinComb.of((LEAF, LEAF), -1)
    # no other degree-3 shapes appear
    assert len(f.term_map()[3]) == 1 and len(g.term_map()[3]) == 1
    assert tree_degree(left_comb(5)) == 5 == tree_degree(right_comb(5))


def test_series_compose_inverse():
    for bound in (4, 8):
        f, g = series_f(bound), series_g(bound)
        ident = identity_series(bound)
        assert mag_compose(f, g, bound) == ident
        assert mag_compose(g, f, bound) == ident


def test_mag_compose_identity_neutral():
    psi = series_g(5)
    assert mag_compose(identity_series(5), psi, 5) == psi


def test_mag_compose_rejects_constant_term():
    bad = MagSeries.from_dict(3, {0: LinComb.of(LEAF)})
    with pytest.raises(NonzeroConstantTermError):
        mag_compose(series_f(3), bad, 3)


def test_word_cohalf_counts():
    # all splits of the non-head factors, head pinned left
    for p in range(1, 4):
        q = 3 - p
        terms = word_cohalf_pq(W_EX, p, q)
        expected = len(list(itertools.combinations(range(2), p - 1)))
        assert len(terms) == expected


def test_interchange_unsigned_fails_on_worked_word():
    ok, defect = check_interchange(W_EX, 1, 1)
    assert not ok
    assert not defect.is_zero()


def test_interchange_signed_holds():
    rng = random.Random(15)
    from graphhomology.symplectic import split_S
    for _ in range(25):
        n_factors = rng.randint(3, 5)
        shape = [rng.choice((2, 2, 3)) for _ in range(n_factors)]
        if sum(shape) % 2:
            shape[0] += 1
        m = sum(shape) // 2
        slots = list(range(1, 2 * m + 1))
        rng.shuffle(slots)
        pairs = [(slots[2 * k], slots[2 * k + 1]) for k in range(m)]
        w = split_S(pairs, shape)
        for p in range(0, n_factors):
            ok, defect = check_interchange_signed(w, p, n_factors - 1 - p)
            assert ok, (w, p, defect)


def test_interchange_p_zero_trivial():
    ok, _ = check_interchange(W_EX, 0, 2)
    assert ok


def test_full_coproduct_unit():
    assert full_coproduct(UNIT) == LinComb.of((UNIT, UNIT))
    assert full_coproduct(H1) == \
        LinComb.of((H1, UNIT)) + LinComb.of((UNIT, H1))
