"""Batch front door: enumeration, differentials, conversions, homology, verify.

All payloads are JSON with rationals as "p/q" strings; output is deterministic
for a fixed seed (printed in every report header).  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import bialgebra, diagrams, graphs, homotopy, symplectic
from .exactlinalg import LinComb, homology_dims

__all__ = ["RunConfig", "run", "main"]

SUITES = ("d2", "homotopy", "bialgebra", "series", "interchange", "commute",
          "lie-diagram")


@dataclass
class RunConfig:
    command: str
    vertices: int = 4
    edges: int = 6
    min_valence: int = 0
    connected: bool = False
    lie: bool = False
    polygons: bool = False
    suite: str | None = None
    seed: int = 0
    input: str | None = None
    output: str | None = None
    max_n: int = 5
    degree: int = 8
    convert_from: str | None = None
    convert_to: str | None = None


def _emit(config: RunConfig, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_input(config: RunConfig) -> dict:
    if not config.input:
        raise SystemExit2("--input is required for this command")
    with open(config.input, "r", encoding="utf-8") as fh:
        return json.load(fh)


class SystemExit2(Exception):
    """Usage error; converted to exit code 2."""


def _cmd_enumerate(config: RunConfig):
    gs = graphs.enumerate_graphs(config.vertices, config.edges,
                                 config.min_valence, config.connected)
    _emit(config, [graphs.graph_to_record(g) for g in gs])
    return 0


def _parse_graph_payload(payload) -> LinComb:
    if isinstance(payload, list):
        return graphs.lincomb_from_records(payload)
    return LinComb.of(graphs.graph_from_record(payload))


def _cmd_diff(config: RunConfig):
    payload = _load_input(config)
    x = _parse_graph_payload(payload)
    if config.lie:
        classes = x.mapped(graphs.lie_class)
        result = graphs.lie_differential(classes)
        records = [{"coeff": str(c), "graph": graphs.graph_to_record(k.rep)}
                   for k, c in sorted(result.items(), key=lambda kv: kv[0])]
    else:
        records = graphs.lincomb_to_records(graphs.differential(x))
    _emit(config, records)
    return 0


def _cmd_coproduct(config: RunConfig):
    payload = _load_input(config)
    g = graphs.graph_from_record(payload)
    result = bialgebra.cohalf_shuffle(g)
    records = [{"coeff": str(c),
                "left": graphs.graph_to_record(l),
                "right": graphs.graph_to_record(r)}
               for (l, r), c in sorted(result.items(), key=lambda kv: kv[0])]
    _emit(config, records)
    return 0


def _cmd_product(config: RunConfig):
    payload = _load_input(config)
    left = graphs.graph_from_record(payload["left"])
    right = graphs.graph_from_record(payload["right"])
    _emit(config, graphs.graph_to_record(graphs.disjoint_union(left, right)))
    return 0


def _word_payload_to_word(payload) -> symplectic.TensorWord:
    return symplectic.word_from_strings(payload)


def _monomial_payload(payload):
    return [tuple(p) for p in payload["pairs"]]


_STAGES = ("word", "monomial", "diagram", "graph")


def _cmd_convert(config: RunConfig):
    src, dst = config.convert_from, config.convert_to
    if src not in _STAGES or dst not in _STAGES:
        raise SystemExit2(f"stages must be among {_STAGES}")
    payload = _load_input(config)
    route = (src, dst)
    if route == ("word", "monomial"):
        w = _word_payload_to_word(payload)
        result = symplectic.tstar(w)
        out = [{"coeff": str(c), "monomial": {"pairs": [list(p) for p in m.pairs]}}
               for m, c in sorted(result.items(), key=lambda kv: kv[0])]
    elif route == ("monomial", "diagram"):
        normalized = diagrams.pair_monomial(_monomial_payload(payload))
        out = []
        for mono, c in sorted(normalized.items(), key=lambda kv: kv[0]):
            d = diagrams.phi(mono)
            shape = payload.get("shape")
            if shape:
                packaged = diagrams.package(d, tuple(shape))
                for pd, c2 in packaged.items():
                    out.append({"coeff": str(c * c2),
                                "diagram": diagrams.diagram_to_record(pd)})
            else:
                out.append({"coeff": str(c),
                            "diagram": {"shape": None,
                                        "pairs": [list(p) for p in d.pairs]}})
    elif route == ("diagram", "graph"):
        packaged = diagrams.diagram_from_record(payload)
        out_comb = packaged.map_keys(diagrams.varphi)
        out = graphs.lincomb_to_records(out_comb)
    elif route == ("diagram", "monomial"):
        packaged = diagrams.diagram_from_record(payload)
        out = [{"coeff": str(c), "monomial": {"pairs": [list(p) for p in
                                              diagrams.phi_inverse(diagrams.ChordDiagram(pd.m, pd.pairs)).pairs]}}
               for pd, c in packaged.items()]
    elif route == ("graph", "diagram"):
        g = graphs.graph_from_record(payload)
        pd = diagrams.varphi_inverse(g)
        out = diagrams.diagram_to_record(pd)
    elif route == ("monomial", "word"):
        shape = payload.get("shape")
        if not shape:
            raise SystemExit2("monomial→word needs a shape")
        w = symplectic.split_S(_monomial_payload(payload), tuple(shape))
        out = symplectic.word_to_strings(w)
    elif route == ("graph", "word"):
        g = graphs.graph_from_record(payload)
        out = symplectic.word_to_strings(symplectic.graph_to_word(g))
    elif route == ("word", "graph"):
        w = _word_payload_to_word(payload)
        out = graphs.lincomb_to_records(symplectic.word_to_graphs(w))
    else:
        raise SystemExit2(f"no conversion route {src} -> {dst}")
    _emit(config, out)
    return 0


def _cmd_homology(config: RunConfig):
    if config.polygons:
        cx = homotopy.polygon_complex(config.max_n)
    else:
        cx = homotopy.reduced_core_complex(config.max_n, config.edges)
    dims = homology_dims(cx)
    _emit(config, {str(k): {"dim": dim, "reliable": reliable}
                   for k, (dim, reliable) in sorted(dims.items())})
    return 0


def _suite_items(config: RunConfig):
    """Yield (label, ok) pairs for the selected verification suite."""
    rng = random.Random(config.seed)
    if config.suite == "d2":
        for n in range(1, config.vertices + 1):
            for g in graphs.enumerate_graphs(n, config.edges):
                val = graphs.differential(graphs.differential(LinComb.of(g)))
                yield repr(g), val.is_zero()
    elif config.suite == "homotopy":
        for n in range(1, config.vertices + 1):
            for g in graphs.enumerate_graphs(n, config.edges, min_valence=2):
                if homotopy.classify(g) != homotopy.Classification.MIXED:
                    continue
                yield repr(g), homotopy.homotopy_defect(g).is_zero()
    elif config.suite == "bialgebra":
        pool = _component_pool(3)
        for g in _products_of(pool, max_components=3):
            ok, _ = bialgebra.check_zinbiel_coalgebra(g)
            yield f"coalgebra {g!r}", ok
        singles = [graphs.UNIT] + _products_of(pool, max_components=2)
        for a in singles:
            for b in singles:
                ok, _ = bialgebra.check_compatibility(a, b)
                yield f"compat {a!r} | {b!r}", ok
    elif config.suite == "series":
        f = bialgebra.series_f(config.degree)
        g = bialgebra.series_g(config.degree)
        ident = bialgebra.identity_series(config.degree)
        yield "f∘g = t", bialgebra.mag_compose(f, g, config.degree) == ident
        yield "g∘f = t", bialgebra.mag_compose(g, f, config.degree) == ident
    elif config.suite == "interchange":
        for case, w in enumerate(_random_words(rng, count=20)):
            n = len(w.factors)
            for p in range(0, n):
                q = n - 1 - p
                ok, _ = bialgebra.check_interchange(w, p, q)
                yield f"word {case} split ({p},{q})", ok
    elif config.suite == "commute":
        for g in _bridge_graphs(config):
            w = symplectic.graph_to_word(g)
            lhs = symplectic.word_to_graphs(
                symplectic.leibniz_differential(LinComb.of(w)))
            rhs = graphs.differential(LinComb.of(g))
            yield repr(g), lhs == rhs
    elif config.suite == "lie-diagram":
        for n in range(1, config.vertices + 1):
            for g in graphs.enumerate_graphs(n, config.edges):
                lhs = graphs.differential(LinComb.of(g)).mapped(graphs.lie_class)
                rhs = graphs.lie_differential(graphs.lie_class(g))
                yield repr(g), lhs == rhs
    else:
        raise SystemExit2(f"unknown suite {config.suite}; choose from {SUITES}")


def _component_pool(max_vertices: int):
    pool = []
    for n in range(1, max_vertices + 1):
        pool.extend(graphs.enumerate_graphs(n, 3, min_valence=2, connected_only=True))
    return pool


def _products_of(pool, max_components: int):
    out = []
    frontier = [graphs.UNIT]
    for _ in range(max_components):
        frontier = [graphs.disjoint_union(g, c) for g in frontier for c in pool]
        out.extend(frontier)
    return out


def _random_words(rng: random.Random, count: int):
    words = []
    for _ in range(count):
        n_factors = rng.randint(3, 5)
        shape = [rng.choice((2, 2, 3)) for _ in range(n_factors)]
        if sum(shape) % 2:
            shape[0] += 1
        m = sum(shape) // 2
        slots = list(range(1, 2 * m + 1))
        rng.shuffle(slots)
        pairs = [(slots[2 * k], slots[2 * k + 1]) for k in range(m)]
        words.append(symplectic.split_S(pairs, shape))
    return words


def _bridge_graphs(config: RunConfig):
    for n in range(1, config.vertices + 1):
        for g in graphs.enumerate_graphs(n, config.edges, min_valence=2):
            yield g


def _cmd_verify(config: RunConfig):
    lines = []
    failures = 0
    total = 0
    for label, ok in _suite_items(config):
        total += 1
        if not ok:
            failures += 1
        lines.append(f"{'OK  ' if ok else 'FAIL'} {label}")
    header = (f"suite={config.suite} seed={config.seed} "
              f"vertices<={config.vertices} edges<={config.edges}")
    body = [header] + sorted(lines)
    if failures:
        body.append(f"{failures} of {total} items fail")
    else:
        body.append(f"all {total} items pass")
    text = "\n".join(body)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if failures else 0


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "diff": _cmd_diff,
    "coproduct": _cmd_coproduct,
    "product": _cmd_product,
    "convert": _cmd_convert,
    "homology": _cmd_homology,
    "verify": _cmd_verify,
}


def run(config: RunConfig) -> int:
    """Execute one command; deterministic for a fixed config."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise SystemExit2(f"unknown command {config.command}")
    return handler(config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphhomology")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--vertices", type=int, default=4)
        p.add_argument("--edges", type=int, default=6)
        p.add_argument("--min-valence", type=int, default=0, dest="min_valence")
        p.add_argument("--connected", action="store_true")
        p.add_argument("--lie", action="store_true")
        p.add_argument("--polygons", action="store_true")
        p.add_argument("--suite", choices=SUITES)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--input")
        p.add_argument("--output")
        p.add_argument("--max-n", type=int, default=5, dest="max_n")
        p.add_argument("--degree", type=int, default=8)
        if name == "convert":
            p.add_argument("--from", dest="convert_from", required=True)
            p.add_argument("--to", dest="convert_to", required=True)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    config = RunConfig(**vars(args))
    try:
        return run(config)
    except SystemExit2 as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
