"""Rebuild src/gameofcycles/data/catalog.json from the figure transcriptions.

The three catalog boards exist only as drawings, so their vertex/edge/cell
data is authored here once, validated, solved, and frozen into the JSON
file.  Run from the repository root:

    python3 scripts/build_catalog.py

The script refuses to write the file unless every documented property of
the boards checks out (sizes, Grundy values, and for the size-9 board the
mirror symmetry and the winning mirrored reply).
"""

from __future__ import annotations

import json
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import networkx as nx

from gameofcycles.graph import build_graph, canonical_cell
from gameofcycles.rules import Move, Position, apply_move, legal_moves
from gameofcycles.solver import analyze, grundy
from gameofcycles.symmetry import find_automorphisms

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "gameofcycles" / "data" / "catalog.json"


def _round2(x: float) -> float:
    return round(x + 0.0, 4)


def ice_cream_cone():
    """Octagon scoop on a triangular cone; the cone shares one rim edge."""
    rim = [f"o{i}" for i in range(1, 9)]
    vertices = rim + ["t"]
    edges = []
    for i, v in enumerate(rim):
        w = rim[(i + 1) % 8]
        edges.append((f"{v}{w}", v, w))
    edges.append(("o1t", "o1", "t"))
    edges.append(("o2t", "o2", "t"))
    cells = [tuple(rim), ("o1", "o2", "t")]
    layout = {}
    for i, v in enumerate(rim):
        a = math.radians(247.5 + 45.0 * i)
        layout[v] = (_round2(math.cos(a)), _round2(math.sin(a)))
    layout["t"] = (0.0, -1.6)
    return build_graph(vertices, edges, cells, (), layout), {
        "note": "octagon scoop over a cone tip; the cone shares the bottom rim edge",
        "grundy": 0,
    }


def layered_cake():
    """Hexagonal top layer with a square layer hanging under its right half."""
    vertices = list("abcdefgh")
    edges = [
        ("ab", "a", "b"),
        ("bc", "b", "c"),
        ("cf", "c", "f"),
        ("ad", "a", "d"),
        ("de", "d", "e"),
        ("ef", "e", "f"),
        ("fg", "f", "g"),
        ("gh", "g", "h"),
        ("eh", "e", "h"),
    ]
    cells = [("a", "b", "c", "f", "e", "d"), ("e", "f", "g", "h")]
    layout = {
        "a": (0.0, 2.0),
        "b": (1.0, 2.0),
        "c": (2.0, 2.0),
        "d": (0.0, 1.0),
        "e": (1.0, 1.0),
        "f": (2.0, 1.0),
        "g": (2.0, 0.0),
        "h": (1.0, 0.0),
    }
    return build_graph(vertices, edges, cells, (), layout), {
        "note": "six-sided top layer over a square lower layer; they share one edge",
        "grundy": 1,
    }


def size9_counterexample():
    """Two boxes sharing a central edge, each box split by a diagonal.

    Mirror-symmetric across the central edge; the reflection fixes that
    edge and nothing else.  Smallest known 2-connected board on which the
    markable-parity rule fails: size 9 yet the second player wins.
    """
    vertices = ["n", "s", "nw", "ne", "sw", "se"]
    edges = [
        ("central", "n", "s"),
        ("top_left", "n", "nw"),
        ("top_right", "n", "ne"),
        ("side_left", "nw", "sw"),
        ("side_right", "ne", "se"),
        ("bottom_left", "sw", "s"),
        ("bottom_right", "se", "s"),
        ("diag_left", "n", "sw"),
        ("diag_right", "n", "se"),
    ]
    cells = [
        ("n", "nw", "sw"),
        ("n", "sw", "s"),
        ("n", "s", "se"),
        ("n", "se", "ne"),
    ]
    layout = {
        "n": (0.0, 1.0),
        "s": (0.0, -1.0),
        "nw": (-2.0, 1.0),
        "sw": (-2.0, -1.0),
        "ne": (2.0, 1.0),
        "se": (2.0, -1.0),
    }
    return build_graph(vertices, edges, cells, (), layout), {
        "note": "two boxes joined along a central edge, each split by a diagonal; "
        "parity counterexample (size 9, second player wins)",
        "grundy": 0,
    }


def check_size9(g) -> None:
    nxg = nx.Graph((e.u, e.v) for e in g.edges)
    assert nx.is_biconnected(nxg), "size-9 board must be 2-connected"

    autos = [a for a in find_automorphisms(g) if any(a[v] != v for v in g.vertices)]
    assert len(autos) == 1, f"expected a single non-trivial symmetry, got {len(autos)}"
    sigma = autos[0]
    assert all(sigma[sigma[v]] == v for v in g.vertices), "symmetry must be an involution"
    fixed = [
        e.id
        for e in g.edges
        if {sigma[e.u], sigma[e.v]} == {e.u, e.v}
    ]
    assert fixed == ["central"], f"reflection must fix exactly the central edge, got {fixed}"

    # The two cells flanking the central edge trade places yet share that
    # edge, so the disjoint-or-invariant condition fails on this board.
    overlapping = False
    cellsets = {canonical_cell(c) for c in g.cells}
    for c in g.cells:
        image = canonical_cell([sigma[v] for v in c])
        assert image in cellsets, "symmetry must preserve the cell structure"
        if image != canonical_cell(c) and set(image) & set(c):
            overlapping = True
    assert overlapping, "central cells should overlap their mirror images"

    # Opening on the central edge loses to the mirrored outermost reply.
    for d1 in ("uv", "vu"):
        after_open = apply_move(Position.empty(g), Move("central", d1))
        report = analyze(after_open)
        winners = {(m.edge, m.direction) for m in report.moves if m.winning}
        reply = ("side_left", "vu" if d1 == "uv" else "uv")  # sw->nw answers n->s
        assert reply in winners, f"mirrored outermost reply must win after central {d1}"

        after_reply = apply_move(after_open, Move(*reply))
        open_edges = {e.id for e in g.edges if after_reply.orientation(e.id) is None}
        dead = open_edges - {m.edge for m in legal_moves(after_reply)}
        assert dead == {"diag_left", "top_left"}, f"unexpected dead set {dead}"


def main() -> None:
    entries = {}
    for builder in (ice_cream_cone, layered_cake, size9_counterexample):
        g, meta = builder()
        value = grundy(Position.empty(g))
        assert value == meta["grundy"], f"{builder.__name__}: grundy {value}"
        if builder is size9_counterexample:
            check_size9(g)
        entries[builder.__name__] = {"note": meta["note"], "graph": g.to_json()}
        print(f"{builder.__name__}: size {g.size}, grundy {value}")

    OUT.write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
