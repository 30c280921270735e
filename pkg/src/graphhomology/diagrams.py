"""Base-pointed chord diagrams, package coinvariants, and the graph bijection.

A chord diagram on m chords is a perfect pairing of {1..2m}; pairs are stored
(min, max) and sorted by first element, so the base point 1 opens the first
pair.  Packaged diagrams take the pairing modulo independent permutations of
consecutive slot blocks ("packages"); a chord inside one package annihilates
the class at construction.

The differential contracts one cross-package chord at a time, deleting its
endpoints and merging the higher package's remaining slots into the lower one
(at the lower position, slot order preserved).  Its sign mirrors the graph
differential under the norm map exactly, so the square with edge contraction
commutes term by term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactlinalg import LinComb
from .graphs import Graph, graph

__all__ = [
    "ChordDiagram",
    "PackagedDiagram",
    "PairMonomial",
    "chord_diagram",
    "oriented_pairs_to_diagram",
    "pair_monomial",
    "phi",
    "phi_inverse",
    "sigma_act_diagram",
    "sigma_act_monomial",
    "package",
    "diagram_differential",
    "varphi",
    "varphi_inverse",
    "all_pairings",
    "diagram_to_record",
    "diagram_from_record",
    "BadShapeError",
    "LowValenceError",
]


class BadShapeError(ValueError):
    pass


class LowValenceError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ChordDiagram:
    """Perfect pairing of {1..2m}: sorted (min, max) pairs sorted by first slot."""

    m: int
    pairs: tuple[tuple[int, int], ...]

    def __repr__(self) -> str:
        return f"ChordDiagram({list(map(list, self.pairs))})"


def chord_diagram(pairs) -> ChordDiagram:
    """Build a canonical diagram; the pairs must partition {1..2m} exactly."""
    norm = sorted((min(a, b), max(a, b)) for a, b in pairs)
    m = len(norm)
    seen = [s for p in norm for s in p]
    if sorted(seen) != list(range(1, 2 * m + 1)):
        raise ValueError(f"pairs {pairs} do not partition 1..{2 * m}")
    return ChordDiagram(m, tuple(norm))


def oriented_pairs_to_diagram(pairs) -> LinComb:
    """Directed chords to ±1 times a canonical diagram; each flip costs -1."""
    sign = 1
    for a, b in pairs:
        if a == b:
            return LinComb.zero()
        if a > b:
            sign = -sign
    return LinComb.of(chord_diagram(pairs), sign)


@dataclass(frozen=True, order=True)
class PairMonomial:
    """Product of antisymmetric pair symbols in standard form.

    Pairs (min, max) sorted by first index; indices are a permutation of
    {1..2m}.  Signs from rewriting a reversed pair live in the enclosing
    linear combination.
    """

    pairs: tuple[tuple[int, int], ...]

    def __repr__(self) -> str:
        return "PairMonomial(" + "".join(f"y{a},{b} " for a, b in self.pairs).strip() + ")"


def pair_monomial(pairs) -> LinComb:
    """Normalize a written pair sequence to ±1 times a standard monomial."""
    sign = 1
    norm = []
    for a, b in pairs:
        if a == b:
            return LinComb.zero()
        if a > b:
            sign = -sign
            a, b = b, a
        norm.append((a, b))
    norm.sort()
    mono = PairMonomial(tuple(norm))
    slots = sorted(s for p in norm for s in p)
    if slots != list(range(1, 2 * len(norm) + 1)):
        raise ValueError(f"indices of {pairs} are not a permutation of 1..{2 * len(norm)}")
    return LinComb.of(mono, sign)


def phi(mono: PairMonomial) -> ChordDiagram:
    """Standard monomials and diagrams share the same pairing data."""
    return ChordDiagram(len(mono.pairs), mono.pairs)


def phi_inverse(d: ChordDiagram) -> PairMonomial:
    return PairMonomial(d.pairs)


def _act_on_pairs(perm, pairs) -> LinComb:
    """Relabel slots by perm^{-1}, collecting -1 per reversed pair."""
    size = len(perm)
    inv = [0] * (size + 1)
    for k, v in enumerate(perm, start=1):
        inv[v] = k
    sign = 1
    moved = []
    for a, b in pairs:
        a2, b2 = inv[a], inv[b]
        if a2 > b2:
            sign = -sign
            a2, b2 = b2, a2
        moved.append((a2, b2))
    moved.sort()
    return LinComb.of(tuple(moved), sign)


def sigma_act_diagram(perm, d: ChordDiagram) -> LinComb:
    """Signed slot relabelling of a diagram."""
    perm = tuple(perm)
    if len(perm) != 2 * d.m or sorted(perm) != list(range(1, 2 * d.m + 1)):
        raise ValueError(f"permutation {perm} does not act on {2 * d.m} slots")
    return _act_on_pairs(perm, d.pairs).map_keys(lambda ps: ChordDiagram(d.m, ps))


def sigma_act_monomial(perm, mono: PairMonomial) -> LinComb:
    """Signed slot relabelling of a standard monomial."""
    perm = tuple(perm)
    m = len(mono.pairs)
    if len(perm) != 2 * m or sorted(perm) != list(range(1, 2 * m + 1)):
        raise ValueError(f"permutation {perm} does not act on {2 * m} slots")
    return _act_on_pairs(perm, mono.pairs).map_keys(PairMonomial)


@dataclass(frozen=True, order=True)
class PackagedDiagram:
    """Diagram modulo within-package slot permutations; canonical representative."""

    shape: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return f"PackagedDiagram({list(self.shape)}, {list(map(list, self.pairs))})"


def _package_of(shape, slot: int) -> int:
    """1-indexed package containing a slot; packages are consecutive blocks."""
    acc = 0
    for k, size in enumerate(shape, start=1):
        acc += size
        if slot <= acc:
            return k
    raise IndexError(slot)


def _package_blocks(shape) -> list[range]:
    blocks = []
    start = 1
    for size in shape:
        blocks.append(range(start, start + size))
        start += size
    return blocks


def _canonical_packaged(shape, pairs) -> PackagedDiagram:
    """Lexicographic minimum of the within-package orbit.

    Cross-package pairs keep their written order under any within-package
    permutation (packages are increasing blocks), so the orbit carries no
    signs; intra-package pairs never reach here.
    """
    blocks = _package_blocks(shape)
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        relabel = {}
        for block, perm in zip(blocks, perms):
            for src, dst in zip(block, perm):
                relabel[src] = dst
        cand = tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
                            for a, b in pairs))
        if best is None or cand < best:
            best = cand
    return PackagedDiagram(tuple(shape), best)


def package(d: ChordDiagram, shape) -> LinComb:
    """Canonical class of a diagram under a package shape, or zero.

    Shape parts must be >= 2 and sum to 2m; a chord with both endpoints in
    one package annihilates the class.
    """
    shape = tuple(int(k) for k in shape)
    if any(k < 2 for k in shape) or sum(shape) != 2 * d.m:
        raise BadShapeError(f"shape {shape} incompatible with {2 * d.m} slots")
    for a, b in d.pairs:
        if _package_of(shape, a) == _package_of(shape, b):
            return LinComb.zero()
    return LinComb.of(_canonical_packaged(shape, d.pairs))


def varphi(pd: PackagedDiagram) -> Graph:
    """Collapse each package to a vertex: chords become edges under the norm map."""
    shape = pd.shape
    edges = [(_package_of(shape, a), _package_of(shape, b)) for a, b in pd.pairs]
    return graph(len(shape), edges)


def varphi_inverse(g: Graph) -> PackagedDiagram:
    """Slot-assignment algorithm: vertex v's edge-ends take consecutive slots.

    Walking vertices in increasing order and the canonical edge list in order,
    each occurrence of the vertex receives the next free slot; the resulting
    pairing, packaged by the valence shape, maps back to g under the norm map.
    """
    from .graphs import valences

    vals = valences(g)
    if any(v < 2 for v in vals):
        raise LowValenceError(f"every vertex needs valence >= 2, got {vals}")
    slots = [[0, 0] for _ in g.edges]
    counter = 1
    for v in range(1, g.n + 1):
        for idx, (i, j) in enumerate(g.edges):
            if i == v:
                slots[idx][0] = counter
                counter += 1
            if j == v:
                slots[idx][1] = counter
                counter += 1
    pairs = [(min(a, b), max(a, b)) for a, b in slots]
    result = package(chord_diagram(pairs), tuple(vals))
    [(pd, coeff)] = list(result.items())
    assert coeff == 1
    return pd


def _contract_chord(pd: PackagedDiagram, chord: tuple[int, int]) -> PackagedDiagram | None:
    """Delete a cross-package chord, merging the higher package into the lower.

    Slot order inside the merged package: lower package's remains first.
    Returns None when a surviving chord lands inside the merged package.
    """
    a, b = chord
    shape = pd.shape
    pa, pb = _package_of(shape, a), _package_of(shape, b)
    blocks = _package_blocks(shape)
    merged = [s for s in blocks[pa - 1] if s != a] + [s for s in blocks[pb - 1] if s != b]
    new_order: list[int] = []
    for k in range(1, len(shape) + 1):
        if k == pa:
            new_order.extend(merged)
        elif k == pb:
            continue
        else:
            new_order.extend(blocks[k - 1])
    relabel = {old: new for new, old in enumerate(new_order, start=1)}
    new_shape = list(shape)
    new_shape[pa - 1] = shape[pa - 1] + shape[pb - 1] - 2
    del new_shape[pb - 1]
    new_pairs = []
    for x, y in pd.pairs:
        if (x, y) == (a, b):
            continue
        x2, y2 = relabel[x], relabel[y]
        p, q = min(x2, y2), max(x2, y2)
        if _package_of(new_shape, p) == _package_of(new_shape, q):
            return None
        new_pairs.append((p, q))
    return _canonical_packaged(tuple(new_shape), new_pairs)


def _chord_sign(pd: PackagedDiagram, chord: tuple[int, int]) -> int:
    """(-1)^(package of the larger endpoint) times the re-orientation factor.

    The factor counts other chords ending in that package whose far endpoint
    sits strictly between the two merged packages, matching the graph side.
    """
    a, b = chord
    shape = pd.shape
    pa, pb = _package_of(shape, a), _package_of(shape, b)
    flips = 0
    for x, y in pd.pairs:
        if (x, y) == (a, b):
            continue
        px, py = _package_of(shape, x), _package_of(shape, y)
        if py == pb and pa < px < pb:
            flips += 1
    return (-1) ** pb * (-1 if flips % 2 else 1)


def diagram_differential(x: LinComb) -> LinComb:
    """∂ extended linearly over packaged diagram classes."""
    def per_diagram(pd: PackagedDiagram) -> LinComb:
        out = LinComb.zero()
        for chord in pd.pairs:
            contracted = _contract_chord(pd, chord)
            if contracted is None:
                continue
            out = out + LinComb.of(contracted, _chord_sign(pd, chord))
        return out
    return x.mapped(per_diagram)


def all_pairings(m: int):
    """All perfect pairings of {1..2m} in canonical form; (2m-1)!! of them."""
    def rec(slots):
        if not slots:
            yield ()
            return
        first = slots[0]
        for k in range(1, len(slots)):
            partner = slots[k]
            rest = slots[1:k] + slots[k + 1:]
            for tail in rec(rest):
                yield ((first, partner),) + tail
    return [ChordDiagram(m, p) for p in rec(tuple(range(1, 2 * m + 1)))]


def diagram_to_record(pd: PackagedDiagram) -> dict:
    return {"shape": list(pd.shape), "pairs": [list(p) for p in pd.pairs]}


def diagram_from_record(rec: dict) -> LinComb:
    d = chord_diagram([tuple(p) for p in rec["pairs"]])
    return package(d, tuple(rec["shape"]))
