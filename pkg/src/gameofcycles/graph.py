"""Board model: connected simple graphs embedded in the plane.

A board is described by its vertices, edges and *cells* (the bounded faces of
the embedding, given as cyclic vertex walks).  Cells may be supplied
explicitly or derived from a rotation system; explicit cells win when both
are present, since they also cover exotic embeddings whose bounded domains
are not all simple cycles.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """A graph description violated a structural invariant."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    def other(self, vertex: str) -> str:
        return self.v if vertex == self.u else self.u

    def endpoints(self) -> frozenset[str]:
        return frozenset((self.u, self.v))


@dataclass(frozen=True)
class EmbeddedGraph:
    """Immutable embedded graph; derived index structures are cached.

    ``special`` vertices are exempt from the sink/source rule.  ``layout`` is
    an optional list of ``(vertex, x, y)`` drawing hints carried through
    serialization for front ends; the game logic never reads it.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    cells: tuple[tuple[str, ...], ...]
    special: frozenset[str]
    layout: tuple[tuple[str, float, float], ...] | None = None

    # ------------------------------------------------------------------
    # derived indices
    # ------------------------------------------------------------------

    @cached_property
    def size(self) -> int:
        """Number of edges (the size of the game)."""
        return len(self.edges)

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_by_pair(self) -> dict[frozenset[str], Edge]:
        return {e.endpoints(): e for e in self.edges}

    @cached_property
    def incident(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e.id)
            inc[e.v].append(e.id)
        return {v: tuple(ids) for v, ids in inc.items()}

    def degree(self, vertex: str) -> int:
        return len(self.incident[vertex])

    @cached_property
    def cell_edges(self) -> tuple[tuple[tuple[str, bool], ...], ...]:
        """Per cell: ``(edge id, forward)`` pairs around the walk.

        ``forward`` is True when traversing the cell visits the edge from its
        stored ``u`` to its stored ``v``.
        """
        out = []
        for cell in self.cells:
            oriented = []
            for i, a in enumerate(cell):
                b = cell[(i + 1) % len(cell)]
                e = self.edge_by_pair[frozenset((a, b))]
                oriented.append((e.id, (e.u, e.v) == (a, b)))
            out.append(tuple(oriented))
        return tuple(out)

    @cached_property
    def cells_of_edge(self) -> dict[str, tuple[int, ...]]:
        member: dict[str, list[int]] = {e.id: [] for e in self.edges}
        for ci, oriented in enumerate(self.cell_edges):
            for eid, _ in oriented:
                member[eid].append(ci)
        return {eid: tuple(cs) for eid, cs in member.items()}

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        """Canonical JSON form: every list sorted by identifier."""
        data: dict = {
            "vertices": sorted(self.vertices),
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v}
                for e in sorted(self.edges, key=lambda e: e.id)
            ],
            "cells": [list(c) for c in sorted(canonical_cell(c) for c in self.cells)],
            "special": sorted(self.special),
        }
        if self.layout is not None:
            data["layout"] = {v: [x, y] for v, x, y in sorted(self.layout)}
        return data

    def digest(self) -> str:
        body = dict(self.to_json())
        body.pop("layout", None)  # drawing hints don't change the board
        blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def canonical_cell(cell: Sequence[str]) -> tuple[str, ...]:
    """Least rotation/reflection of a cyclic vertex walk."""
    seqs = []
    n = len(cell)
    for walk in (tuple(cell), tuple(reversed(cell))):
        for i in range(n):
            seqs.append(walk[i:] + walk[:i])
    return min(seqs)


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------


def build_graph(
    vertices: Iterable[str],
    edges: Iterable[tuple[str, str, str]],
    cells: Iterable[Sequence[str]] = (),
    special: Iterable[str] = (),
    layout: Mapping[str, tuple[float, float]] | None = None,
) -> EmbeddedGraph:
    """Assemble and validate a graph from plain data."""
    layout_t = None
    if layout is not None:
        layout_t = tuple((v, float(x), float(y)) for v, (x, y) in sorted(layout.items()))
    g = EmbeddedGraph(
        vertices=tuple(vertices),
        edges=tuple(Edge(i, u, v) for i, u, v in edges),
        cells=tuple(tuple(c) for c in cells),
        special=frozenset(special),
        layout=layout_t,
    )
    _validate(g)
    return g


def _validate(g: EmbeddedGraph) -> None:
    if not g.vertices:
        raise GraphError("empty", "graph needs at least one vertex")
    if len(set(g.vertices)) != len(g.vertices):
        raise GraphError("duplicate-vertex", "duplicate vertex identifier")
    vset = set(g.vertices)

    seen_ids: set[str] = set()
    seen_pairs: set[frozenset[str]] = set()
    for e in g.edges:
        if e.id in seen_ids:
            raise GraphError("duplicate-edge-id", f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        if e.u not in vset or e.v not in vset:
            raise GraphError("unknown-vertex", f"edge {e.id!r} uses an unknown vertex")
        if e.u == e.v:
            raise GraphError("loop", f"edge {e.id!r} is a loop")
        pair = e.endpoints()
        if pair in seen_pairs:
            raise GraphError("parallel-edge", f"parallel edge {e.id!r}")
        seen_pairs.add(pair)

    bad_special = g.special - vset
    if bad_special:
        raise GraphError("unknown-vertex", f"special vertices {sorted(bad_special)} not in graph")

    # connectivity
    reached = {g.vertices[0]}
    frontier = [g.vertices[0]]
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    if reached != vset:
        raise GraphError("disconnected", "graph is not connected")

    # cells: simple closed walks along existing edges, each edge in <= 2 cells
    use_count: dict[str, int] = {e.id: 0 for e in g.edges}
    seen_cells: set[tuple[str, ...]] = set()
    for cell in g.cells:
        if len(cell) < 3:
            raise GraphError("short-cell", f"cell {cell} has fewer than 3 vertices")
        if len(set(cell)) != len(cell):
            raise GraphError("non-simple-cell", f"cell {cell} repeats a vertex")
        for i, a in enumerate(cell):
            b = cell[(i + 1) % len(cell)]
            e = g.edge_by_pair.get(frozenset((a, b)))
            if e is None:
                raise GraphError("cell-non-edge", f"cell {cell} uses missing edge {a}-{b}")
            use_count[e.id] += 1
        key = canonical_cell(cell)
        if key in seen_cells:
            raise GraphError("duplicate-cell", f"cell {cell} listed twice")
        seen_cells.add(key)
    for eid, n in use_count.items():
        if n > 2:
            raise GraphError("edge-cell-overflow", f"edge {eid!r} lies on more than two cells")

    if g.layout is not None:
        for v, _, _ in g.layout:
            if v not in vset:
                raise GraphError("unknown-vertex", f"layout mentions unknown vertex {v!r}")


def validate_graph(data: Mapping | EmbeddedGraph) -> EmbeddedGraph:
    """Validate a raw description (JSON-shaped mapping) or re-check a graph."""
    if isinstance(data, EmbeddedGraph):
        _validate(data)
        return data
    return from_json(data)


# ----------------------------------------------------------------------
# JSON I/O
# ----------------------------------------------------------------------


def from_json(data: Mapping) -> EmbeddedGraph:
    """Build a validated graph from its JSON description.

    Accepts either an explicit ``cells`` list or a ``rotation`` system plus
    an ``outer`` face index.  Unknown keys are ignored.
    """
    if not isinstance(data, Mapping):
        raise GraphError("malformed", "graph description must be an object")
    try:
        vertices = [str(v) for v in data["vertices"]]
        raw_edges = [(str(e["id"]), str(e["u"]), str(e["v"])) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError("malformed", f"missing or malformed field: {exc}") from exc

    if "cells" in data:
        cells = [tuple(str(v) for v in c) for c in data["cells"]]
    elif "rotation" in data:
        if "outer" not in data:
            raise GraphError("malformed", "rotation form requires an 'outer' face index")
        rotation = {str(v): [str(e) for e in r] for v, r in data["rotation"].items()}
        cells, _ = derive_cells(vertices, raw_edges, rotation, int(data["outer"]))
    else:
        cells = []

    layout = None
    if "layout" in data and data["layout"] is not None:
        layout = {str(v): (float(x), float(y)) for v, (x, y) in data["layout"].items()}

    return build_graph(vertices, raw_edges, cells, data.get("special", ()), layout)


# ----------------------------------------------------------------------
# cell derivation from a rotation system
# ----------------------------------------------------------------------


def derive_cells(
    vertices: Sequence[str],
    edges: Sequence[tuple[str, str, str]],
    rotation: Mapping[str, Sequence[str]],
    outer: int,
) -> tuple[list[tuple[str, ...]], list[tuple[str, ...]]]:
    """Trace face walks of a rotation system and split them into cells.

    Returns ``(cells, dropped)``: the simple-cycle bounded faces, and the
    bounded walks that revisit a vertex (e.g. the annular domain of the
    closed-wing butterfly) which carry no cell and are reported only as
    diagnostics.  The face with index ``outer`` (in the deterministic face
    order described below) is the unbounded one and never yields a cell.

    Faces are ordered by ``(walk length, canonical walk)`` so the ``outer``
    index is stable across runs.  Raises ``GraphError('nonplanar')`` when the
    walks violate Euler's formula V - E + F = 2.
    """
    by_id = {i: (u, v) for i, u, v in edges}
    inc: dict[str, set[str]] = {v: set() for v in vertices}
    for i, u, v in edges:
        inc[u].add(i)
        inc[v].add(i)
    for v in vertices:
        rot = list(rotation.get(v, ()))
        if set(rot) != inc[v] or len(rot) != len(inc[v]):
            raise GraphError("bad-rotation", f"rotation at {v!r} must permute its incident edges")

    succ: dict[str, dict[str, str]] = {}
    for v in vertices:
        rot = list(rotation[v]) if inc[v] else []
        succ[v] = {eid: rot[(k + 1) % len(rot)] for k, eid in enumerate(rot)}

    def head(eid: str, tail: str) -> str:
        u, v = by_id[eid]
        return v if tail == u else u

    # darts are (edge, tail); next dart leaves the head along the rotation
    # successor of the arriving edge
    darts = sorted((i, u, v, "f") for i, u, v in edges) + sorted(
        (i, v, u, "b") for i, u, v in edges
    )
    seen: set[tuple[str, str]] = set()
    walks: list[tuple[str, ...]] = []
    for eid0, tail0, _, _ in darts:
        if (eid0, tail0) in seen:
            continue
        walk: list[str] = []
        eid, tail = eid0, tail0
        while (eid, tail) not in seen:
            seen.add((eid, tail))
            walk.append(tail)
            h = head(eid, tail)
            eid, tail = succ[h][eid], h
        walks.append(tuple(walk))

    n_faces = len(walks)
    if len(vertices) - len(edges) + n_faces != 2:
        raise GraphError(
            "nonplanar",
            f"rotation system yields {n_faces} faces; V-E+F={len(vertices)-len(edges)+n_faces} != 2",
        )

    def face_key(w: tuple[str, ...]):
        return (len(w), min(w[i:] + w[:i] for i in range(len(w))))

    walks.sort(key=face_key)
    if not 0 <= outer < len(walks):
        raise GraphError("bad-outer", f"outer face index {outer} out of range 0..{len(walks)-1}")

    cells: list[tuple[str, ...]] = []
    dropped: list[tuple[str, ...]] = []
    for i, w in enumerate(walks):
        if i == outer:
            continue
        if len(set(w)) == len(w):
            cells.append(w)
        else:
            dropped.append(w)
    return cells, dropped


# ----------------------------------------------------------------------
# trimming
# ----------------------------------------------------------------------


def trim(graph: EmbeddedGraph) -> EmbeddedGraph:
    """Remove unmarkable pendant edges.

    Repeatedly deletes a degree-1 non-special vertex together with its edge
    and marks the neighbour special.  Vertices that reach degree 1 during
    the process are already special, so each pendant chain loses exactly one
    layer.  Leaves are processed in sorted order, which makes the survivor
    of a lone edge deterministic.  Cells are untouched: a pendant edge lies
    on no cycle.
    """
    vertices = list(graph.vertices)
    edges = {e.id: e for e in graph.edges}
    special = set(graph.special)
    inc = {v: set(graph.incident[v]) for v in graph.vertices}

    while True:
        leaves = sorted(
            v for v in vertices if len(inc[v]) == 1 and v not in special
        )
        if not leaves:
            break
        v = leaves[0]
        (eid,) = inc[v]
        w = edges[eid].other(v)
        del edges[eid]
        inc[w].discard(eid)
        vertices.remove(v)
        del inc[v]
        special.add(w)

    layout = None
    if graph.layout is not None:
        layout = {v: (x, y) for v, x, y in graph.layout if v in set(vertices)}
    return build_graph(
        vertices,
        [(e.id, e.u, e.v) for e in graph.edges if e.id in edges],
        graph.cells,
        special & set(vertices),
        layout,
    )
