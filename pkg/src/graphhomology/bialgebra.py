"""Half-shuffle coproduct on graphs, the primitive projector, tree series.

The coproduct splits the ordered component list: the first component stays in
the left tensor factor, the rest distribute over both sides keeping their
order.  Connected graphs are primitive.  The projector is the alternating
left-bracketed convolution series, which truncates at the component count.

The interchange checker comes in two variants: the plain one evaluates the
identity with unsigned factor shuffles; the signed one inserts the graded
shuffle signs (-1 per transposed factor pair) plus (-1)^p on the right-leg
differential, which is the form that actually holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactlinalg import LinComb, rational
from .graphs import Graph, UNIT, assemble, connected_components, disjoint_union
from .symplectic import TensorWord, leibniz_differential

__all__ = [
    "cohalf_shuffle",
    "reduced_cohalf_shuffle",
    "tau",
    "full_coproduct",
    "check_zinbiel_coalgebra",
    "check_compatibility",
    "primitive_projector",
    "halfshuffle",
    "shuffle_words",
    "star_product",
    "LEAF",
    "tree_degree",
    "left_comb",
    "right_comb",
    "MagSeries",
    "series_f",
    "series_g",
    "identity_series",
    "mag_compose",
    "word_cohalf_pq",
    "check_interchange",
    "check_interchange_signed",
    "UnitInputError",
    "EmptyLeftError",
    "NonzeroConstantTermError",
    "LengthMismatchError",
]


class UnitInputError(ValueError):
    pass


class EmptyLeftError(ValueError):
    pass


class NonzeroConstantTermError(ValueError):
    pass


class LengthMismatchError(ValueError):
    pass


def _splits(items):
    """All order-preserving two-sided splits of a sequence."""
    n = len(items)
    for mask in range(1 << n):
        left = tuple(items[k] for k in range(n) if mask >> k & 1)
        right = tuple(items[k] for k in range(n) if not mask >> k & 1)
        yield left, right


def cohalf_shuffle(g: Graph) -> LinComb:
    """Split the component word, first component pinned to the left factor.

    Output is a combination of ordered (left graph, right graph) pairs; for
    connected input the single term is g ⊗ unit.
    """
    if g == UNIT:
        raise UnitInputError("the unit graph has no half-shuffle coproduct")
    comps = connected_components(g)
    head, tail = comps[0], comps[1:]
    out = LinComb.zero()
    for left, right in _splits(tail):
        out = out + LinComb.of((assemble((head,) + left), assemble(right)))
    return out


def reduced_cohalf_shuffle(g: Graph) -> LinComb:
    """cohalf_shuffle minus the g ⊗ unit term; lands in nonunit ⊗ nonunit."""
    return cohalf_shuffle(g) - LinComb.of((g, UNIT))


def tau(x: LinComb) -> LinComb:
    """Swap the two tensor factors."""
    return x.map_keys(lambda pair: (pair[1], pair[0]))


def full_coproduct(g: Graph) -> LinComb:
    """Cocommutative combination: half shuffle plus its flip; unit maps to unit⊗unit."""
    if g == UNIT:
        return LinComb.of((UNIT, UNIT))
    half = cohalf_shuffle(g)
    return half + tau(half)


def check_zinbiel_coalgebra(g: Graph):
    """Half-shuffle coassociativity, checked in reduced form.

    Evaluates (Δ̄⊗Id)Δ̄ - (Id⊗Δ̄)Δ̄ - (Id⊗τΔ̄)Δ̄ on g.  Stripping the unit
    terms makes the three-term law equivalent to the counital one without
    needing a coproduct for the unit.  Returns (ok, defect).
    """
    red = reduced_cohalf_shuffle(g)

    def left_expand(pair):
        a, b = pair
        return reduced_cohalf_shuffle(a).map_keys(lambda lr: (lr[0], lr[1], b))

    def right_expand(pair, flip):
        a, b = pair
        inner = reduced_cohalf_shuffle(b)
        if flip:
            inner = tau(inner)
        return inner.map_keys(lambda lr: (a, lr[0], lr[1]))

    lhs = red.mapped(left_expand)
    rhs = (red.mapped(lambda p: right_expand(p, False))
           + red.mapped(lambda p: right_expand(p, True)))
    defect = lhs - rhs
    return defect.is_zero(), defect


def check_compatibility(a: Graph, b: Graph):
    """Δ_≺(a·b) against (μ⊗μ)(Id⊗τ⊗Id)(Δ_≺(a)⊗Δ(b)).  Returns (ok, defect)."""
    if a == UNIT:
        return True, LinComb.zero()
    prod = disjoint_union(a, b)
    lhs = cohalf_shuffle(prod)
    rhs = LinComb.zero()
    for (a1, a2), ca in cohalf_shuffle(a).items():
        for (b1, b2), cb in full_coproduct(b).items():
            key = (disjoint_union(a1, b1), disjoint_union(a2, b2))
            rhs = rhs + LinComb.of(key, ca * cb)
    defect = lhs - rhs
    return defect.is_zero(), defect


def _convolution_power(k: int, g: Graph, memo: dict) -> LinComb:
    """Left-bracketed k-th convolution power of (identity minus unit) at g."""
    if k == 1:
        return LinComb.of(g)
    key = (k, g)
    if key not in memo:
        out = LinComb.zero()
        for (left, right), c in reduced_cohalf_shuffle(g).items():
            inner = _convolution_power(k - 1, left, memo)
            out = out + inner.map_keys(lambda m, r=right: disjoint_union(m, r)).scale(c)
        memo[key] = out
    return memo[key]


def primitive_projector(x: LinComb, degree_bound: int | None = None) -> LinComb:
    """Alternating convolution series J - J*J + (J*J)*J - ...

    Convolution is through the reduced coproduct, so the k-th power vanishes
    on graphs with fewer than k components: the series truncates at the
    component count (or degree_bound).  Fixes connected graphs, kills proper
    products, idempotent.
    """
    memo: dict = {}

    def per_graph(g: Graph) -> LinComb:
        if g == UNIT:
            return LinComb.zero()
        bound = len(connected_components(g))
        if degree_bound is not None:
            bound = min(bound, degree_bound)
        out = LinComb.zero()
        for k in range(1, bound + 1):
            out = out + _convolution_power(k, g, memo).scale((-1) ** (k - 1))
        return out

    return x.mapped(per_graph)


def shuffle_words(u: tuple, v: tuple) -> LinComb:
    """Shuffle product of two letter words, with multiplicities."""
    out = LinComb.zero()
    n, m = len(u), len(v)
    for positions in itertools.combinations(range(n + m), n):
        merged = [None] * (n + m)
        for idx, pos in enumerate(positions):
            merged[pos] = u[idx]
        rest = iter(v)
        for k in range(n + m):
            if merged[k] is None:
                merged[k] = next(rest)
        out = out + LinComb.of(tuple(merged))
    return out


def halfshuffle(u: tuple, v: tuple) -> LinComb:
    """u ≺ v = u_1 (u_2...u_n ⧢ v); the left word must be nonempty."""
    if not u:
        raise EmptyLeftError("the half shuffle needs a nonempty left word")
    head, tail = u[0], tuple(u[1:])
    return shuffle_words(tail, tuple(v)).map_keys(lambda w: (head,) + w)


def star_product(u: tuple, v: tuple) -> LinComb:
    """u≺v + v≺u, the symmetrized product (commutative, associative)."""
    return halfshuffle(u, v) + halfshuffle(v, u)


# --- planar binary trees and magmatic series ---------------------------------

LEAF = "t"


def tree_degree(tree) -> int:
    if tree == LEAF:
        return 1
    left, right = tree
    return tree_degree(left) + tree_degree(right)


def left_comb(n: int):
    """((t·t)·t)... with n leaves."""
    out = LEAF
    for _ in range(n - 1):
        out = (out, LEAF)
    return out


def right_comb(n: int):
    """t·(t·(t...)) with n leaves."""
    out = LEAF
    for _ in range(n - 1):
        out = (LEAF, out)
    return out


@dataclass(frozen=True)
class MagSeries:
    """Formal series in the free magma, truncated at a degree bound."""

    bound: int
    terms: tuple[tuple[int, LinComb], ...]

    @classmethod
    def from_dict(cls, bound: int, terms: dict[int, LinComb]) -> "MagSeries":
        clean = tuple(sorted((d, lc) for d, lc in terms.items() if lc and d <= bound))
        return cls(bound, clean)

    def term_map(self) -> dict[int, LinComb]:
        return dict(self.terms)

    def coeff(self, tree) -> Fraction:
        return self.term_map().get(tree_degree(tree), LinComb.zero()).coeff(tree)


def series_f(degree_bound: int) -> MagSeries:
    """Right combs, all coefficients +1."""
    return MagSeries.from_dict(degree_bound, {
        n: LinComb.of(right_comb(n)) for n in range(1, degree_bound + 1)})


def series_g(degree_bound: int) -> MagSeries:
    """Left combs with alternating signs, +1 on the single leaf."""
    return MagSeries.from_dict(degree_bound, {
        n: LinComb.of(left_comb(n), (-1) ** (n + 1)) for n in range(1, degree_bound + 1)})


def identity_series(degree_bound: int) -> MagSeries:
    return MagSeries.from_dict(degree_bound, {1: LinComb.of(LEAF)})


def _graft(tree, inner: dict[int, LinComb], bound: int) -> dict[int, LinComb]:
    """Substitute the series `inner` into every leaf of one tree shape."""
    if tree == LEAF:
        return {d: lc for d, lc in inner.items() if d <= bound}
    left, right = tree
    left_sub = _graft(left, inner, bound)
    right_sub = _graft(right, inner, bound)
    out: dict[int, LinComb] = {}
    for dl, lcl in left_sub.items():
        for dr, lcr in right_sub.items():
            d = dl + dr
            if d > bound:
                continue
            acc = out.get(d, LinComb.zero())
            for tl, cl in lcl.items():
                for tr, cr in lcr.items():
                    acc = acc + LinComb.of((tl, tr), cl * cr)
            out[d] = acc
    return out


def mag_compose(outer: MagSeries, inner: MagSeries, degree_bound: int) -> MagSeries:
    """Formal substitution of inner into outer, truncated at degree_bound."""
    inner_map = inner.term_map()
    if inner_map.get(0):
        raise NonzeroConstantTermError("substituted series must have no constant term")
    acc: dict[int, LinComb] = {}
    for _, lc in outer.terms:
        for tree, coeff in lc.items():
            for d, sub in _graft(tree, inner_map, degree_bound).items():
                acc[d] = acc.get(d, LinComb.zero()) + sub.scale(coeff)
    return MagSeries.from_dict(degree_bound, acc)


# --- word-level coproduct projections and the interchange law ----------------

def word_cohalf_pq(w: TensorWord, p: int, q: int, signed: bool = False) -> LinComb:
    """(p, q)-component of the factor half-shuffle coproduct of a word.

    The first factor stays on the left; the remaining factors split
    order-preservingly.  With ``signed`` each pair of factors that ends up
    transposed contributes -1 (graded shuffle sign for degree-one letters).
    """
    fs = w.factors
    n = len(fs)
    if p + q != n:
        return LinComb.zero()
    if p < 1:
        return LinComb.zero()
    out = LinComb.zero()
    for left_idx in itertools.combinations(range(1, n), p - 1):
        left_pos = (0,) + left_idx
        right_pos = tuple(k for k in range(1, n) if k not in left_idx)
        sign = 1
        if signed:
            inversions = sum(1 for x in left_pos for y in right_pos if y < x)
            sign = -1 if inversions % 2 else 1
        left = TensorWord(tuple(fs[k] for k in left_pos))
        right = TensorWord(tuple(fs[k] for k in right_pos))
        out = out + LinComb.of((left, right), sign)
    return out


def _interchange_sides(w: TensorWord, p: int, q: int, signed: bool):
    if len(w.factors) != p + q + 1:
        raise LengthMismatchError(f"word has {len(w.factors)} factors, need {p + q + 1}")

    lhs = LinComb.zero()
    for term, c in leibniz_differential(LinComb.of(w)).items():
        lhs = lhs + word_cohalf_pq(term, p, q, signed).scale(c)

    rhs = LinComb.zero()
    for (left, right), c in word_cohalf_pq(w, p + 1, q, signed).items():
        for lterm, lc in leibniz_differential(LinComb.of(left)).items():
            rhs = rhs + LinComb.of((lterm, right), c * lc)
    right_sign = (-1) ** p if signed else 1
    for (left, right), c in word_cohalf_pq(w, p, q + 1, signed).items():
        for rterm, rc in leibniz_differential(LinComb.of(right)).items():
            rhs = rhs + LinComb.of((left, rterm), c * rc * right_sign)
    return lhs, rhs


def check_interchange(w: TensorWord, p: int, q: int):
    """Unsigned interchange of the factor half shuffle with the differential.

    Returns (ok, defect).  The unsigned form fails in general: the shuffle
    needs graded signs for the differential to pass across it.
    """
    lhs, rhs = _interchange_sides(w, p, q, signed=False)
    defect = lhs - rhs
    return defect.is_zero(), defect


def check_interchange_signed(w: TensorWord, p: int, q: int):
    """Graded-sign interchange; this identity holds.  Returns (ok, defect)."""
    lhs, rhs = _interchange_sides(w, p, q, signed=True)
    defect = lhs - rhs
    return defect.is_zero(), defect
