"""Vertex-labelled loopless multigraphs, their differential and quotients.

A graph on vertices {1..n} stores its edge multiset as sorted pairs (i, j)
with i < j; the empty graph on zero vertices is the algebra unit.  Orientation
is never stored: a directed edge list canonicalizes at construction, each flip
contributing -1 and any loop annihilating the combination.

The differential contracts one edge copy at a time.  Contracting {i, j}
(i < j) merges j into i and shifts labels above j down by one; the term's sign
is (-1)^j times a re-orientation sign (-1)^f where f counts the other edges
(a, j) with i < a < j, whose written direction reverses under the merge.
Without the re-orientation factor the square of the map is nonzero already on
five-vertex graphs; with it, d∘d = 0 holds (exhaustively tested).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactlinalg import LinComb

__all__ = [
    "Graph",
    "UNIT",
    "OrientedEdgeList",
    "GraphClass",
    "graph",
    "canonicalize",
    "contract",
    "differential",
    "differential_graph",
    "disjoint_union",
    "connected_components",
    "assemble",
    "sigma_act",
    "perm_sign",
    "lie_class",
    "lie_differential",
    "enumerate_graphs",
    "valences",
    "graph_to_record",
    "graph_from_record",
    "lincomb_to_records",
    "lincomb_from_records",
    "BadVertexError",
    "NoSuchEdgeError",
    "SizeMismatchError",
]


class BadVertexError(ValueError):
    pass


class NoSuchEdgeError(ValueError):
    pass


class SizeMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Graph:
    """Canonical labelled multigraph: sorted tuple of sorted loopless pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __repr__(self) -> str:
        return f"Graph({self.n}, {list(map(list, self.edges))})"


def graph(n: int, edges) -> Graph:
    """Build a canonical Graph, sorting pairs and the multiset; loops rejected."""
    norm = []
    for e in edges:
        i, j = e
        if i == j:
            raise ValueError(f"loop at vertex {i}; loops are not graph basis elements")
        if not (1 <= i <= n and 1 <= j <= n):
            raise BadVertexError(f"edge {e} outside vertex range 1..{n}")
        norm.append((min(i, j), max(i, j)))
    norm.sort()
    return Graph(n, tuple(norm))


UNIT = Graph(0, ())


@dataclass(frozen=True)
class OrientedEdgeList:
    """Directed edges on {1..n}; a presentation, not a basis element."""

    n: int
    edges: tuple[tuple[int, int], ...]


def canonicalize(o: OrientedEdgeList) -> LinComb:
    """Reduce a directed edge list to ±1 times a canonical Graph, or zero.

    Each edge [i, j] with i > j flips, contributing -1; any loop [i, i]
    annihilates the whole element.
    """
    sign = 1
    pairs = []
    for i, j in o.edges:
        if not (1 <= i <= o.n and 1 <= j <= o.n):
            raise BadVertexError(f"edge [{i},{j}] outside vertex range 1..{o.n}")
        if i == j:
            return LinComb.zero()
        if i > j:
            sign = -sign
            i, j = j, i
        pairs.append((i, j))
    pairs.sort()
    return LinComb.of(Graph(o.n, tuple(pairs)), sign)


def _std(k: int, i: int, j: int) -> int:
    """Relabelling after contracting {i, j}, i < j: j ↦ i, above j shift down."""
    if k == j:
        return i
    if k > j:
        return k - 1
    return k


def contract(g: Graph, edge: tuple[int, int]) -> LinComb:
    """Contract one copy of an edge; unsigned; zero if a loop would appear."""
    i, j = min(edge), max(edge)
    if (i, j) not in g.edges:
        raise NoSuchEdgeError(f"{edge} not an edge of {g}")
    remaining = list(g.edges)
    remaining.remove((i, j))
    new_edges = []
    for a, b in remaining:
        a2, b2 = _std(a, i, j), _std(b, i, j)
        if a2 == b2:
            return LinComb.zero()
        new_edges.append((min(a2, b2), max(a2, b2)))
    new_edges.sort()
    return LinComb.of(Graph(g.n - 1, tuple(new_edges)))


def _reorientation_sign(g: Graph, i: int, j: int) -> int:
    """(-1)^f where f counts edges (a, j) with i < a < j besides the contracted copy."""
    flips = sum(1 for a, b in g.edges if b == j and i < a < j)
    return -1 if flips % 2 else 1


def differential_graph(g: Graph) -> LinComb:
    """δ on one basis graph: signed sum of single-edge contractions."""
    out = LinComb.zero()
    for pos, (i, j) in enumerate(g.edges):
        rest = g.edges[:pos] + g.edges[pos + 1:]
        term = contract(g, (i, j))
        if term.is_zero():
            continue
        sign = (-1) ** j * _reorientation_sign(Graph(g.n, rest), i, j)
        out = out + term.scale(sign)
    return out


def differential(x: LinComb) -> LinComb:
    """δ extended linearly; drops vertex count and edge count by one per term."""
    return x.mapped(differential_graph)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Ordered disjoint union: b's vertices shifted past a's."""
    shifted = tuple((i + a.n, j + a.n) for i, j in b.edges)
    return graph(a.n + b.n, a.edges + shifted)


def assemble(components) -> Graph:
    """Ordered disjoint union of a sequence of graphs (unit for empty input)."""
    out = UNIT
    for c in components:
        out = disjoint_union(out, c)
    return out


def connected_components(g: Graph) -> list[Graph]:
    """Components standardised to their own labels, ordered by minimal original label."""
    if g.n == 0:
        return []
    parent = list(range(g.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(find(v), []).append(v)
    comps = []
    for root in sorted(groups):
        verts = sorted(groups[root])
        relabel = {v: k + 1 for k, v in enumerate(verts)}
        edges = [(relabel[i], relabel[j]) for i, j in g.edges if find(i) == root]
        comps.append(graph(len(verts), edges))
    return comps


def perm_sign(perm) -> int:
    """Sign of a permutation given as a 1-indexed image tuple."""
    n = len(perm)
    seen = [False] * (n + 1)
    sign = 1
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = perm[v - 1]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sigma_act(perm, g: Graph) -> LinComb:
    """Signed symmetric-group action on the canonically oriented basis.

    Relabelling moves directed edges; expressing the result in canonical
    (low, high) orientation flips every edge whose endpoints get swapped,
    at -1 apiece.  The total sign is sgn(σ) times (-1)^(#reversed edges);
    only with this re-orientation factor does the contraction differential
    commute with the action.
    """
    perm = tuple(perm)
    if len(perm) != g.n or sorted(perm) != list(range(1, g.n + 1)):
        raise SizeMismatchError(f"permutation {perm} does not act on {g.n} vertices")
    reversed_edges = sum(1 for i, j in g.edges if perm[i - 1] > perm[j - 1])
    sign = perm_sign(perm) * (-1 if reversed_edges % 2 else 1)
    relabelled = graph(g.n, ((perm[i - 1], perm[j - 1]) for i, j in g.edges))
    return LinComb.of(relabelled, sign)


def _relabel(g: Graph, perm) -> Graph:
    return graph(g.n, ((perm[i - 1], perm[j - 1]) for i, j in g.edges))


@dataclass(frozen=True, order=True)
class GraphClass:
    """Basis element of the signed-relabelling quotient: the orbit-minimal graph."""

    rep: Graph

    def __repr__(self) -> str:
        return f"GraphClass({self.rep!r})"


def lie_class(g: Graph) -> LinComb:
    """Project a graph to the signed relabelling quotient: zero or ±one class.

    The orbit minimum over all relabellings is the representative, with the
    sigma_act sign (sgn times the re-orientation factor); a graph related to
    itself with sign -1 is annihilated.
    """
    best: Graph | None = None
    best_signs: set[int] = set()
    for perm in itertools.permutations(range(1, g.n + 1)):
        cand = _relabel(g, perm)
        reversed_edges = sum(1 for a, b in g.edges if perm[a - 1] > perm[b - 1])
        sign = perm_sign(perm) * (-1 if reversed_edges % 2 else 1)
        if best is None or cand.edges < best.edges:
            best = cand
            best_signs = {sign}
        elif cand.edges == best.edges:
            best_signs.add(sign)
    assert best is not None
    if len(best_signs) == 2:
        return LinComb.zero()
    return LinComb.of(GraphClass(best), best_signs.pop())


def lie_differential(x: LinComb) -> LinComb:
    """δ on the quotient: lift the representative, contract, re-project."""
    def per_class(cls: GraphClass) -> LinComb:
        return differential_graph(cls.rep).mapped(lie_class)
    return x.mapped(per_class)


def valences(g: Graph) -> list[int]:
    """Valence of each vertex, 1-indexed list of length n."""
    val = [0] * (g.n + 1)
    for i, j in g.edges:
        val[i] += 1
        val[j] += 1
    return val[1:]


def enumerate_graphs(n: int, max_edges: int, min_valence: int = 0,
                     connected_only: bool = False) -> list[Graph]:
    """All canonical graphs on exactly n vertices meeting the constraints, sorted."""
    if n == 0:
        return [UNIT] if not connected_only else []
    pair_types = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out = []
    for count in range(0, max_edges + 1):
        for combo in itertools.combinations_with_replacement(pair_types, count):
            g = Graph(n, combo)
            if min_valence > 0 and min(valences(g)) < min_valence:
                continue
            if connected_only and len(connected_components(g)) != 1:
                continue
            out.append(g)
    out.sort()
    return out


def graph_to_record(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_record(rec: dict) -> Graph:
    return graph(int(rec["n"]), [tuple(e) for e in rec["edges"]])


def lincomb_to_records(x: LinComb) -> list[dict]:
    items = sorted(x.items(), key=lambda kv: kv[0])
    return [{"coeff": str(c), "graph": graph_to_record(g)} for g, c in items]


def lincomb_from_records(recs) -> LinComb:
    out = LinComb.zero()
    for rec in recs:
        out = out + LinComb.of(graph_from_record(rec["graph"]), rec["coeff"])
    return out
