"""Board generators for the graph families used throughout the project.

Parameterized families are built in code; topologies that exist only as
drawings (ice cream cone, layered cake, the size-9 parity counterexample)
are transcribed once into ``data/catalog.json`` and loaded from there, so a
transcription fix never touches generator logic.  Tree families come in
trimmed form: every leaf is special.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator

import networkx as nx

from .graph import EmbeddedGraph, build_graph, trim


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its integer parameters and flags."""

    name: str
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def of(cls, name: str, **params) -> "FamilySpec":
        return cls(name, tuple(sorted(params.items())))

    def as_dict(self) -> dict:
        return dict(self.params)


def _edge_ids(n: int) -> list[str]:
    width = max(2, len(str(n)))
    return [f"e{i+1:0{width}d}" for i in range(n)]


def _ring_layout(names: list[str], radius: float = 1.0, cx: float = 0.0, cy: float = 0.0) -> dict:
    out = {}
    for i, v in enumerate(names):
        a = 2 * math.pi * i / len(names) - math.pi / 2
        out[v] = (cx + radius * math.cos(a), cy + radius * math.sin(a))
    return out


# ----------------------------------------------------------------------
# generators
# ----------------------------------------------------------------------


def cycle(n: int, special: bool = False) -> EmbeddedGraph:
    if n < 3:
        raise FamilyError("cycle needs n >= 3")
    vs = [f"v{i+1:02d}" for i in range(n)]
    eids = _edge_ids(n)
    edges = [(eids[i], vs[i], vs[(i + 1) % n]) for i in range(n)]
    return build_graph(
        vs, edges, [tuple(vs)], {vs[0]} if special else (), _ring_layout(vs)
    )


def cycle_with_special(n: int) -> EmbeddedGraph:
    return cycle(n, special=True)


def lollipop(n: int = 3, pendants: int = 1, trimmed: bool = False) -> EmbeddedGraph:
    """An n-gon with ``pendants`` loose ends: one pendant edge on each of the
    first ``pendants`` cycle vertices.  ``trimmed=True`` returns the
    equivalent trimmed board instead."""
    if pendants < 0 or pendants > n:
        raise FamilyError("pendants must be between 0 and n")
    base = cycle(n)
    vs = list(base.vertices)
    edges = [(e.id, e.u, e.v) for e in base.edges]
    layout = {v: (x, y) for v, x, y in base.layout}
    eids = _edge_ids(n + pendants)
    for i in range(pendants):
        tip = f"t{i+1:02d}"
        vs.append(tip)
        edges.append((eids[n + i], f"v{i+1:02d}", tip))
        x, y = layout[f"v{i+1:02d}"]
        layout[tip] = (x * 1.8, y * 1.8)
    g = build_graph(vs, edges, base.cells, (), layout)
    return trim(g) if trimmed else g


def wedge_cycles(a: int, b: int, special: bool = False) -> EmbeddedGraph:
    """Two cycles sharing a single vertex (the hub), side by side."""
    if a < 3 or b < 3:
        raise FamilyError("cycles need length >= 3")
    hub = "hub"
    left = [hub] + [f"a{i:02d}" for i in range(1, a)]
    right = [hub] + [f"b{i:02d}" for i in range(1, b)]
    eids = _edge_ids(a + b)
    edges = [(eids[i], left[i], left[(i + 1) % a]) for i in range(a)]
    edges += [(eids[a + i], right[i], right[(i + 1) % b]) for i in range(b)]
    layout = _ring_layout(left, 1.0, -1.0, 0.0)
    layout.update(_ring_layout(right, 1.0, 1.0, 0.0))
    layout[hub] = (0.0, 0.0)
    vs = left + right[1:]
    return build_graph(
        vs, edges, [tuple(left), tuple(right)], {hub} if special else (), layout
    )


def wedge_triangle_ngon(n: int) -> EmbeddedGraph:
    """A triangle and an n-gon joined at one ordinary vertex (the fishy graph)."""
    return wedge_cycles(3, n)


def fishy(n: int) -> EmbeddedGraph:
    g = wedge_triangle_ngon(n)
    assert g.size == n + 3
    return g


def butterfly(variant: str = "open") -> EmbeddedGraph:
    """Two triangles sharing a vertex.

    The two planar embeddings play differently: with open wings both
    triangles are cells; with closed wings one triangle sits inside the
    other, the annular bounded domain has a non-simple boundary and carries
    no cell, so only the inner triangle remains.
    """
    vs = ["hub", "i1", "i2", "o1", "o2"]
    edges = [
        ("e1", "hub", "i1"), ("e2", "i1", "i2"), ("e3", "i2", "hub"),
        ("e4", "hub", "o1"), ("e5", "o1", "o2"), ("e6", "o2", "hub"),
    ]
    inner = ("hub", "i1", "i2")
    outer = ("hub", "o1", "o2")
    if variant == "open":
        layout = {"hub": (0, 0), "i1": (-1.2, 0.7), "i2": (-1.2, -0.7),
                  "o1": (1.2, 0.7), "o2": (1.2, -0.7)}
        return build_graph(vs, edges, [inner, outer], (), layout)
    if variant == "closed":
        layout = {"hub": (0, 0), "i1": (-0.5, 0.6), "i2": (0.5, 0.6),
                  "o1": (-1.4, 1.6), "o2": (1.4, 1.6)}
        return build_graph(vs, edges, [inner], (), layout)
    raise FamilyError(f"butterfly variant must be open/closed, got {variant!r}")


def windmill(k: int, nested: bool = False) -> EmbeddedGraph:
    """k triangular blades sharing one hub vertex.

    Like the butterfly (its k=2 case) the windmill has inequivalent planar
    embeddings and they play differently.  With ``nested=False`` the blades
    sit side by side and each triangle is a cell.  With ``nested=True`` the
    blades are drawn one inside the next, so every annular region between
    consecutive blades has a non-simple boundary and only the innermost
    triangle is a cell.
    """
    if k < 1:
        raise FamilyError("windmill needs k >= 1")
    if nested and k < 2:
        raise FamilyError("nested windmill needs k >= 2")
    hub = "hub"
    vs = [hub]
    edges = []
    cells = []
    layout = {hub: (0.0, 0.0)}
    eids = _edge_ids(3 * k)
    for i in range(k):
        p, q = f"p{i+1:02d}", f"q{i+1:02d}"
        vs += [p, q]
        edges += [
            (eids[3 * i], hub, p),
            (eids[3 * i + 1], p, q),
            (eids[3 * i + 2], q, hub),
        ]
        if nested:
            r = 2.0 - 1.4 * i / k
            layout[p] = (-0.45 * r, r)
            layout[q] = (0.45 * r, r)
        else:
            cells.append((hub, p, q))
            base = 2 * math.pi * i / k
            spread = math.pi / (2 * k)
            layout[p] = (1.4 * math.cos(base - spread), 1.4 * math.sin(base - spread))
            layout[q] = (1.4 * math.cos(base + spread), 1.4 * math.sin(base + spread))
    if nested:
        cells.append((hub, f"p{k:02d}", f"q{k:02d}"))
    g = build_graph(vs, edges, cells, (), layout)
    assert g.size == 3 * k
    return g


def box(k: int) -> EmbeddedGraph:
    """A row of k unit boxes (the ladder of squares)."""
    if k < 1:
        raise FamilyError("box needs k >= 1")
    top = [f"t{i:02d}" for i in range(k + 1)]
    bot = [f"b{i:02d}" for i in range(k + 1)]
    edges = []
    eids = _edge_ids(3 * k + 1)
    w = 0
    for i in range(k + 1):  # rungs
        edges.append((eids[w], top[i], bot[i]))
        w += 1
    for i in range(k):  # rails
        edges.append((eids[w], top[i], top[i + 1]))
        w += 1
        edges.append((eids[w], bot[i], bot[i + 1]))
        w += 1
    cells = [(top[i], top[i + 1], bot[i + 1], bot[i]) for i in range(k)]
    layout = {v: (float(i), 1.0) for i, v in enumerate(top)}
    layout.update({v: (float(i), 0.0) for i, v in enumerate(bot)})
    g = build_graph(top + bot, edges, cells, (), layout)
    assert g.size == 3 * k + 1
    return g


def spider(legs: tuple[int, ...] = (2, 2, 2)) -> EmbeddedGraph:
    """A centre vertex with one path per leg, in trimmed form.

    Leg lengths count markable edges: each tip is special, standing for a
    trimmed-away loose end.
    """
    if len(legs) < 1 or any(l < 1 for l in legs):
        raise FamilyError("legs must be positive lengths")
    c = "c"
    vs = [c]
    edges = []
    special = set()
    eids = _edge_ids(sum(legs))
    layout = {c: (0.0, 0.0)}
    w = 0
    for i, length in enumerate(legs):
        prev = c
        a = 2 * math.pi * i / len(legs) - math.pi / 2
        for j in range(length):
            node = f"l{i+1}_{j+1}"
            vs.append(node)
            edges.append((eids[w], prev, node))
            layout[node] = ((j + 1) * math.cos(a), (j + 1) * math.sin(a))
            w += 1
            prev = node
        special.add(prev)
    return build_graph(vs, edges, (), special, layout)


def path(n: int) -> EmbeddedGraph:
    """A path of n markable edges, endpoints special (trimmed form)."""
    if n < 1:
        raise FamilyError("path needs n >= 1")
    vs = [f"v{i:02d}" for i in range(n + 1)]
    eids = _edge_ids(n)
    edges = [(eids[i], vs[i], vs[i + 1]) for i in range(n)]
    layout = {v: (float(i), 0.0) for i, v in enumerate(vs)}
    return build_graph(vs, edges, (), {vs[0], vs[-1]}, layout)


def star(k: int) -> EmbeddedGraph:
    """A star with k special leaves (trimmed form)."""
    if k < 1:
        raise FamilyError("star needs k >= 1")
    return spider(tuple([1] * k))


def random_branching_tree(size: int, seed: int = 0) -> EmbeddedGraph:
    """A random branching tree with ``size`` edges (leaves special).

    Grown by two branching-preserving moves: hang a new leaf on an internal
    vertex, or give an existing leaf two children (it becomes internal of
    degree 3).  Sizes 1 and >= 3 are reachable; no branching tree has size 2.
    """
    if size < 1 or size == 2:
        raise FamilyError("branching trees exist for size 1 and sizes >= 3")
    rng = random.Random(seed)
    nxt = [0]

    def fresh() -> str:
        nxt[0] += 1
        return f"n{nxt[0]:03d}"

    root, a = fresh(), fresh()
    edges = [(root, a)]
    children: dict[str, list[str]] = {root: [a], a: []}
    if size > 1:
        # jump to the 3-star, then grow
        b, c = fresh(), fresh()
        edges += [(root, b), (root, c)]
        children[root] += [b, c]
        children[b] = []
        children[c] = []
    while len(edges) < size:
        internal = [v for v, ch in children.items() if ch]
        leaves = [v for v, ch in children.items() if not ch and v != root]
        want_two = len(edges) + 2 <= size and rng.random() < 0.5
        if want_two and leaves:
            leaf = rng.choice(sorted(leaves))
            for _ in range(2):
                w = fresh()
                edges.append((leaf, w))
                children[leaf].append(w)
                children[w] = []
        else:
            host = rng.choice(sorted(internal))
            w = fresh()
            edges.append((host, w))
            children[host].append(w)
            children[w] = []
    vs = sorted(children)
    degree: dict[str, int] = {v: 0 for v in vs}
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    special = {v for v, d in degree.items() if d == 1}
    eids = _edge_ids(len(edges))
    return build_graph(vs, [(eids[i], u, v) for i, (u, v) in enumerate(sorted(edges))], (), special)


# ----------------------------------------------------------------------
# catalog graphs (figure transcriptions)
# ----------------------------------------------------------------------


@lru_cache(maxsize=1)
def _catalog() -> dict:
    text = resources.files("gameofcycles.data").joinpath("catalog.json").read_text()
    return json.loads(text)


def catalog_entry(name: str) -> dict:
    cat = _catalog()
    if name not in cat:
        raise FamilyError(f"no catalog entry {name!r}")
    return cat[name]


def goldens() -> list[dict]:
    """Recorded grundy results for the golden suite (scripts/build_goldens.py).

    Each record freezes family, params, digest, size and grundy; replays must
    reproduce all five fields bit-exactly.
    """
    text = resources.files("gameofcycles.data").joinpath("goldens.json").read_text()
    return json.loads(text)["entries"]


def _catalog_graph(name: str) -> EmbeddedGraph:
    from .graph import from_json

    return from_json(catalog_entry(name)["graph"])


def ice_cream_cone() -> EmbeddedGraph:
    g = _catalog_graph("ice_cream_cone")
    assert g.size == 10
    return g


def layered_cake() -> EmbeddedGraph:
    g = _catalog_graph("layered_cake")
    assert g.size == 9
    return g


def size9_counterexample() -> EmbeddedGraph:
    g = _catalog_graph("size9_counterexample")
    assert g.size == 9
    return g


# ----------------------------------------------------------------------
# registry and dispatch
# ----------------------------------------------------------------------

FAMILIES: dict[str, dict] = {
    "cycle": {"builder": cycle, "params": {"n": "cycle length >= 3"}},
    "cycle_with_special": {"builder": cycle_with_special, "params": {"n": "cycle length >= 3"}},
    "lollipop": {
        "builder": lollipop,
        "params": {"n": "cycle length", "pendants": "loose ends (default 1)",
                   "trimmed": "return trimmed form (default false)"},
    },
    "wedge_cycles": {
        "builder": wedge_cycles,
        "params": {"a": "first cycle", "b": "second cycle",
                   "special": "make the hub special (default false)"},
    },
    "wedge_triangle_ngon": {"builder": wedge_triangle_ngon, "params": {"n": "n-gon length"}},
    "fishy": {"builder": fishy, "params": {"n": "n-gon length (size n+3)"}},
    "butterfly": {"builder": butterfly, "params": {"variant": "open or closed"}},
    "windmill": {
        "builder": windmill,
        "params": {"k": "number of blades", "nested": "draw blades one inside the next"},
    },
    "box": {"builder": box, "params": {"k": "number of boxes"}},
    "ice_cream_cone": {"builder": ice_cream_cone, "params": {}},
    "layered_cake": {"builder": layered_cake, "params": {}},
    "size9_counterexample": {"builder": size9_counterexample, "params": {}},
    "spider": {"builder": spider, "params": {"legs": "markable leg lengths, e.g. 2,2,4"}},
    "path": {"builder": path, "params": {"n": "edges"}},
    "star": {"builder": star, "params": {"k": "leaves"}},
    "random_branching_tree": {
        "builder": random_branching_tree,
        "params": {"size": "edge count (1 or >= 3)", "seed": "rng seed"},
    },
}


def generate(spec: FamilySpec | str, **params) -> EmbeddedGraph:
    """Build a family member; output is deterministic for equal parameters."""
    if isinstance(spec, FamilySpec):
        name, params = spec.name, spec.as_dict()
    else:
        name = spec
    if name not in FAMILIES:
        raise FamilyError(f"unknown family {name!r}")
    try:
        return FAMILIES[name]["builder"](**params)
    except TypeError as exc:
        raise FamilyError(f"bad parameters for {name}: {exc}") from exc


# ----------------------------------------------------------------------
# tree enumeration
# ----------------------------------------------------------------------


def enumerate_trees(max_edges: int = 11) -> Iterator[EmbeddedGraph]:
    """Every tree with 1..max_edges edges, once per isomorphism class.

    Trees are emitted in trimmed form (leaves special), smallest first.
    """
    if max_edges < 1:
        return
    yield path(1)
    for order in range(3, max_edges + 2):
        for t in nx.nonisomorphic_trees(order):
            mapping = {old: f"v{i+1:02d}" for i, old in enumerate(sorted(t.nodes()))}
            edges = sorted((mapping[u], mapping[v]) for u, v in t.edges())
            edges = [tuple(sorted(e)) for e in edges]
            eids = _edge_ids(len(edges))
            degree: dict[str, int] = {}
            for u, v in edges:
                degree[u] = degree.get(u, 0) + 1
                degree[v] = degree.get(v, 0) + 1
            special = {v for v, d in degree.items() if d == 1}
            yield build_graph(
                sorted(mapping.values()),
                [(eids[i], u, v) for i, (u, v) in enumerate(sorted(edges))],
                (),
                special,
            )
