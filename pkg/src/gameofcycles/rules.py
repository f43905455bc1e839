"""Move legality for the Game of Cycles.

Players take turns directing one undirected edge.  A move is illegal when it
turns a non-special vertex into a sink or source (all incident edges
directed, all inward or all outward) or when it is a *death move*: one that
leaves some cell with exactly one undirected edge and every directed edge
running the same way around the cell, so the opponent could close the cycle.
With death moves forbidden the game is pure normal play: whoever cannot move
loses.

Positions pack the per-edge state into an integer word, two bits per edge:
0 undirected, 1 directed u->v, 2 directed v->u.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import EmbeddedGraph

UV, VU = "uv", "vu"
_CODE = {UV: 1, VU: 2}
_DIR = {1: UV, 2: VU}


class IllegalMoveError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class InvalidPositionError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class Move:
    edge: str
    direction: str  # "uv" or "vu"

    def __post_init__(self):
        if self.direction not in _CODE:
            raise IllegalMoveError("bad-direction", f"direction must be uv/vu, got {self.direction!r}")

    def endpoints(self, graph: EmbeddedGraph) -> tuple[str, str]:
        """(tail, head) of the arrow this move draws."""
        e = graph.edge_by_id[self.edge]
        return (e.u, e.v) if self.direction == UV else (e.v, e.u)


@dataclass(frozen=True)
class Position:
    graph: EmbeddedGraph
    word: int = 0

    @classmethod
    def empty(cls, graph: EmbeddedGraph) -> "Position":
        return cls(graph, 0)

    def code(self, edge_id: str) -> int:
        idx = compiled(self.graph).index[edge_id]
        return (self.word >> (2 * idx)) & 3

    def orientation(self, edge_id: str) -> str | None:
        return _DIR.get(self.code(edge_id))

    def directed_count(self) -> int:
        w, n = self.word, 0
        while w:
            if w & 3:
                n += 1
            w >>= 2
        return n

    def to_json(self) -> dict:
        data = self.graph.to_json()
        data["orientation"] = {
            e["id"]: self.orientation(e["id"]) for e in data["edges"]
        }
        return data


def position_from_json(data) -> Position:
    """Read a position (graph JSON plus an ``orientation`` map) and validate it."""
    from .graph import from_json

    graph = from_json(data)
    orientation = data.get("orientation", {})
    if not isinstance(orientation, dict):
        raise InvalidPositionError("malformed", "'orientation' must be an object")
    word = 0
    comp = compiled(graph)
    for eid, d in orientation.items():
        if eid not in comp.index:
            raise InvalidPositionError("unknown-edge", f"orientation references unknown edge {eid!r}")
        if d is None:
            continue
        if d not in _CODE:
            raise InvalidPositionError("malformed", f"edge {eid!r}: direction must be uv/vu/null")
        word |= _CODE[d] << (2 * comp.index[eid])
    pos = Position(graph, word)
    validate_position(pos)
    return pos


# ----------------------------------------------------------------------
# compiled board: flat integer tables for the hot path
# ----------------------------------------------------------------------


class _Compiled:
    __slots__ = (
        "graph", "n", "index", "ids", "move_order",
        "ends", "special", "incident", "cells", "cells_of",
    )

    def __init__(self, graph: EmbeddedGraph):
        self.graph = graph
        self.ids = tuple(e.id for e in graph.edges)
        self.index = {eid: i for i, eid in enumerate(self.ids)}
        self.n = len(self.ids)
        # moves are generated in sorted edge-id order, u->v before v->u
        self.move_order = tuple(self.index[eid] for eid in sorted(self.ids))
        vidx = {v: i for i, v in enumerate(graph.vertices)}
        self.ends = tuple((vidx[e.u], vidx[e.v]) for e in graph.edges)
        self.special = tuple(v in graph.special for v in graph.vertices)
        # incident[v] = ((edge, code-that-points-into-v), ...)
        inc: list[list[tuple[int, int]]] = [[] for _ in graph.vertices]
        for i, e in enumerate(graph.edges):
            inc[vidx[e.u]].append((i, 2))
            inc[vidx[e.v]].append((i, 1))
        self.incident = tuple(tuple(x) for x in inc)
        # cells[c] = ((edge, code-that-agrees-with-the-walk), ...)
        cells = []
        for oriented in graph.cell_edges:
            cells.append(tuple((self.index[eid], 1 if fwd else 2) for eid, fwd in oriented))
        self.cells = tuple(cells)
        cof: list[list[int]] = [[] for _ in range(self.n)]
        for ci, cell in enumerate(self.cells):
            for ei, _ in cell:
                cof[ei].append(ci)
        self.cells_of = tuple(tuple(x) for x in cof)


@lru_cache(maxsize=256)
def compiled(graph: EmbeddedGraph) -> _Compiled:
    return _Compiled(graph)


def _makes_sink_or_source(comp: _Compiled, word: int, eidx: int, code: int) -> bool:
    w = word | (code << (2 * eidx))
    for v in comp.ends[eidx]:
        if comp.special[v]:
            continue
        inward = -1
        for j, in_code in comp.incident[v]:
            s = (w >> (2 * j)) & 3
            if s == 0:
                break
            this = 1 if s == in_code else 0
            if inward == -1:
                inward = this
            elif inward != this:
                break
        else:
            return True  # all directed, all the same way
    return False


def _is_death(comp: _Compiled, word: int, eidx: int, code: int) -> bool:
    w = word | (code << (2 * eidx))
    for ci in comp.cells_of[eidx]:
        undirected = 0
        agree = -1
        ok = True
        for j, with_code in comp.cells[ci]:
            s = (w >> (2 * j)) & 3
            if s == 0:
                undirected += 1
                if undirected > 1:
                    ok = False
                    break
            else:
                this = 1 if s == with_code else 0
                if agree == -1:
                    agree = this
                elif agree != this:
                    ok = False
                    break
        if ok and undirected == 1:
            return True
    return False


def _legal_codes(comp: _Compiled, word: int, eidx: int):
    if (word >> (2 * eidx)) & 3:
        return
    for code in (1, 2):
        if _makes_sink_or_source(comp, word, eidx, code):
            continue
        if _is_death(comp, word, eidx, code):
            continue
        yield code


def legal_words(comp: _Compiled, word: int) -> list[int]:
    """Child words in deterministic move order."""
    out = []
    for eidx in comp.move_order:
        for code in _legal_codes(comp, word, eidx):
            out.append(word | (code << (2 * eidx)))
    return out


# ----------------------------------------------------------------------
# public operations
# ----------------------------------------------------------------------


def _check_move_target(comp: _Compiled, position: Position, move: Move) -> int:
    if move.edge not in comp.index:
        raise IllegalMoveError("unknown-edge", f"no edge {move.edge!r}")
    eidx = comp.index[move.edge]
    if (position.word >> (2 * eidx)) & 3:
        raise IllegalMoveError("already-directed", f"edge {move.edge!r} is already directed")
    return eidx


def is_sink_source_violation(position: Position, move: Move) -> bool:
    """Would the move create a sink or source at a non-special endpoint?"""
    comp = compiled(position.graph)
    eidx = _check_move_target(comp, position, move)
    return _makes_sink_or_source(comp, position.word, eidx, _CODE[move.direction])


def is_death_move(position: Position, move: Move) -> bool:
    """Would the move leave a cell one consistent edge away from closing?

    Only cells through the moved edge are inspected; a valid position has no
    pending cell, and no other cell changes.
    """
    comp = compiled(position.graph)
    eidx = _check_move_target(comp, position, move)
    return _is_death(comp, position.word, eidx, _CODE[move.direction])


def move_reason(position: Position, move: Move) -> str | None:
    """None when legal, otherwise why not ('sink-source' / 'death-move')."""
    comp = compiled(position.graph)
    eidx = _check_move_target(comp, position, move)
    code = _CODE[move.direction]
    if _makes_sink_or_source(comp, position.word, eidx, code):
        return "sink-source"
    if _is_death(comp, position.word, eidx, code):
        return "death-move"
    return None


def legal_moves(position: Position) -> list[Move]:
    """All legal moves, sorted by edge id with u->v before v->u."""
    comp = compiled(position.graph)
    out = []
    for eidx in comp.move_order:
        for code in _legal_codes(comp, position.word, eidx):
            out.append(Move(comp.ids[eidx], _DIR[code]))
    return out


def apply_move(position: Position, move: Move) -> Position:
    comp = compiled(position.graph)
    reason = move_reason(position, move)
    if reason is not None:
        detail = "would create a sink or source" if reason == "sink-source" else \
            "would let the opponent close a cycle cell"
        raise IllegalMoveError(reason, f"{move.edge} {move.direction}: {detail}")
    eidx = comp.index[move.edge]
    return Position(position.graph, position.word | (_CODE[move.direction] << (2 * eidx)))


def is_terminal(position: Position) -> bool:
    comp = compiled(position.graph)
    for eidx in comp.move_order:
        for _ in _legal_codes(comp, position.word, eidx):
            return False
    return True


def validate_position(position: Position) -> None:
    """Check the invariants every reachable position satisfies.

    No completed cycle cell, no pending cell, and no non-special sink or
    source.  Raises ``InvalidPositionError`` naming the broken invariant.
    """
    comp = compiled(position.graph)
    word = position.word
    if word >> (2 * comp.n):
        raise InvalidPositionError("malformed", "orientation word wider than the edge list")
    for v in range(len(comp.special)):
        if comp.special[v] or not comp.incident[v]:
            continue
        inward = -1
        for j, in_code in comp.incident[v]:
            s = (word >> (2 * j)) & 3
            if s == 0:
                break
            this = 1 if s == in_code else 0
            if inward == -1:
                inward = this
            elif inward != this:
                break
        else:
            kind = "sink" if inward == 1 else "source"
            raise InvalidPositionError(
                "sink-source", f"vertex {position.graph.vertices[v]!r} is a {kind}"
            )
    for ci, cell in enumerate(comp.cells):
        undirected = 0
        consistent = True
        agree = -1
        for j, with_code in cell:
            s = (word >> (2 * j)) & 3
            if s == 0:
                undirected += 1
            else:
                this = 1 if s == with_code else 0
                if agree == -1:
                    agree = this
                elif agree != this:
                    consistent = False
        if consistent and undirected == 0:
            raise InvalidPositionError(
                "completed-cell", f"cell {position.graph.cells[ci]} is a completed cycle"
            )
        if consistent and undirected == 1:
            raise InvalidPositionError(
                "pending-cell",
                f"cell {position.graph.cells[ci]} is one consistent edge from closing",
            )
