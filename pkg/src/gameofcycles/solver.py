"""Sprague-Grundy solver.

The game is a finite impartial game under normal play, so every position has
a Grundy value: the mex of its children's values, 0 exactly when the player
to move loses.  The solver memoizes values in a write-once transposition
table keyed by a symmetry-canonical orientation word, and walks the game DAG
with an explicit stack.  Moves only add directions, so positions at equal
depth never alias and the DAG needs no cycle handling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import reduce
from operator import xor
from typing import Iterable, Sequence

import networkx as nx

from .graph import EmbeddedGraph, build_graph
from .rules import (
    Move,
    Position,
    _DIR,
    compiled,
    legal_words,
    validate_position,
)
from . import symmetry


def mex(values: Iterable[int]) -> int:
    """Least non-negative integer missing from ``values``."""
    present = set(values)
    g = 0
    while g in present:
        g += 1
    return g


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int | None = None
    max_table_entries: int | None = None


class TranspositionTable:
    """Write-once value store with hit/miss counters.

    Entries are never evicted; overflowing the capacity raises
    ``BudgetExceededError``, and rewriting a key with a different value is a
    solver bug and raises ``RuntimeError`` immediately.
    """

    def __init__(self, capacity: int | None = None):
        self.capacity = capacity
        self.data: dict = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self.data)

    def get(self, key):
        v = self.data.get(key)
        if v is None and key not in self.data:
            self.misses += 1
            return None
        self.hits += 1
        return v

    def put(self, key, value) -> None:
        old = self.data.get(key)
        if old is not None and old != value:
            raise RuntimeError(f"transposition conflict at {key!r}: {old} vs {value}")
        if old is None and self.capacity is not None and len(self.data) >= self.capacity:
            raise BudgetExceededError(f"transposition table full ({self.capacity} entries)")
        self.data[key] = value


@dataclass
class MoveReport:
    edge: str
    direction: str
    child_grundy: int
    winning: bool

    def to_json(self) -> dict:
        return {
            "edge": self.edge,
            "dir": self.direction,
            "childGrundy": self.child_grundy,
            "winning": self.winning,
        }


@dataclass
class AnalysisReport:
    grundy: int
    winner: str
    moves: list[MoveReport]
    nodes: int
    millis: int

    def to_json(self) -> dict:
        return {
            "grundy": self.grundy,
            "winner": self.winner,
            "moves": [m.to_json() for m in self.moves],
            "nodes": self.nodes,
            "millis": self.millis,
        }


_MAX_GROUP = 24  # canonicalizing costs O(|group|) per child; past this the
                 # table rows saved no longer pay for it (highly symmetric
                 # trees have groups in the thousands)


class Solver:
    """Grundy evaluation for positions on one fixed graph.

    ``symmetry=True`` canonicalizes words under the embedding automorphism
    group before table lookups; the raw word is the key when the group search
    is over budget, the graph has more than 16 edges, or the group is too
    large to pay for itself.
    """

    def __init__(
        self,
        graph: EmbeddedGraph,
        *,
        use_symmetry: bool = True,
        budget: SolveBudget | None = None,
        table: TranspositionTable | None = None,
    ):
        self.graph = graph
        self.comp = compiled(graph)
        self.budget = budget or SolveBudget()
        self.table = table if table is not None else TranspositionTable(
            self.budget.max_table_entries
        )
        self.win_table: dict = {}
        self.nodes = 0
        if use_symmetry:
            self.group = symmetry.edge_group(graph)
            if len(self.group) > _MAX_GROUP:
                self.group = symmetry.edge_group.__wrapped__(graph, max_edges=0)
        else:
            self.group = symmetry.edge_group.__wrapped__(graph, max_edges=0)

    # ------------------------------------------------------------------

    def canonical_key(self, position_or_word) -> int:
        """Least orientation word over the automorphism group orbit."""
        word = self._word(position_or_word)
        if len(self.group) == 1:
            return word
        return min(symmetry.transform_word(word, a) for a in self.group)

    def _word(self, position_or_word) -> int:
        if isinstance(position_or_word, Position):
            if position_or_word.graph is not self.graph and position_or_word.graph != self.graph:
                raise ValueError("position belongs to a different graph")
            return position_or_word.word
        return position_or_word

    def _spend_node(self) -> None:
        self.nodes += 1
        if self.budget.max_nodes is not None and self.nodes > self.budget.max_nodes:
            raise BudgetExceededError(f"node budget {self.budget.max_nodes} exceeded")

    # ------------------------------------------------------------------

    def grundy(self, position_or_word=0) -> int:
        """Full Grundy value (explicit-stack memoized DFS)."""
        root = self._word(position_or_word)
        rkey = self.canonical_key(root)
        cached = self.table.get(rkey)
        if cached is not None:
            return cached
        # frame: [word, key, children keys+words, next index, child values]
        stack: list[list] = [[root, rkey, None, 0, None]]
        while stack:
            f = stack[-1]
            if f[2] is None:
                self._spend_node()
                f[2] = [(self.canonical_key(w), w) for w in legal_words(self.comp, f[0])]
                f[4] = set()
            advanced = False
            while f[3] < len(f[2]):
                ck, cw = f[2][f[3]]
                v = self.table.get(ck)
                if v is None:
                    stack.append([cw, ck, None, 0, None])
                    advanced = True
                    break
                f[4].add(v)
                f[3] += 1
            if advanced:
                continue
            self.table.put(f[1], mex(f[4]))
            stack.pop()
        return self.table.get(rkey)

    def winner(self, position_or_word=0) -> str:
        """'first' or 'second', via the win/loss fast path."""
        root = self._word(position_or_word)
        rkey = self.canonical_key(root)
        known = self.table.data.get(rkey)
        if known is not None:
            return "first" if known else "second"
        return "first" if self._wins(root, rkey) else "second"

    def _wins(self, root: int, rkey) -> bool:
        # position is winning iff some child is losing; cut off on the first
        stack: list[list] = [[root, rkey, None, 0]]
        while stack:
            f = stack[-1]
            if f[2] is None:
                self._spend_node()
                f[2] = [(self.canonical_key(w), w) for w in legal_words(self.comp, f[0])]
            result = None
            advanced = False
            while f[3] < len(f[2]):
                ck, cw = f[2][f[3]]
                v = self.win_table.get(ck)
                if v is None:
                    grundy_known = self.table.data.get(ck)
                    if grundy_known is not None:
                        v = grundy_known != 0
                if v is None:
                    stack.append([cw, ck, None, 0])
                    advanced = True
                    break
                if v is False:
                    result = True
                    break
                f[3] += 1
            if advanced:
                continue
            if result is None:
                result = False  # every child wins for the opponent
            self.win_table[f[1]] = result
            stack.pop()
        return self.win_table[rkey]

    def analyze(self, position: Position | None = None) -> AnalysisReport:
        """Root Grundy value plus a per-move breakdown in move order."""
        pos = position if position is not None else Position(self.graph)
        validate_position(pos)
        start = time.monotonic()
        start_nodes = self.nodes
        moves: list[MoveReport] = []
        values = set()
        for eidx in self.comp.move_order:
            from .rules import _legal_codes

            for code in _legal_codes(self.comp, pos.word, eidx):
                child = pos.word | (code << (2 * eidx))
                g = self.grundy(child)
                values.add(g)
                moves.append(MoveReport(self.comp.ids[eidx], _DIR[code], g, g == 0))
        root = mex(values)
        millis = int((time.monotonic() - start) * 1000)
        return AnalysisReport(
            grundy=root,
            winner="first" if root else "second",
            moves=moves,
            nodes=self.nodes - start_nodes,
            millis=millis,
        )


# ----------------------------------------------------------------------
# module-level conveniences
# ----------------------------------------------------------------------


def grundy(position: Position, **kwargs) -> int:
    return Solver(position.graph, **kwargs).grundy(position)

def winner(position: Position, **kwargs) -> str:
    return Solver(position.graph, **kwargs).winner(position)

def analyze(position: Position, **kwargs) -> AnalysisReport:
    return Solver(position.graph, **kwargs).analyze(position)

def canonical_key(position: Position) -> tuple[str, int]:
    """Graph digest plus the symmetry-least orientation word."""
    s = Solver(position.graph)
    return (position.graph.digest(), s.canonical_key(position))


# ----------------------------------------------------------------------
# sums and decomposition
# ----------------------------------------------------------------------


def decompose(position: Position) -> list[Position]:
    """Split a position at special cut vertices into independent fragments.

    A special vertex never couples its sides (no sink/source rule there, and
    cells stay within 2-edge-connected pieces), so the game is the
    disjunctive sum of the fragments.  Each fragment keeps a special copy of
    every shared vertex.  Returns ``[position]`` when nothing splits.
    """
    g = position.graph
    if len(g.edges) == 0:
        return [position]
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from((e.u, e.v) for e in g.edges)
    split_at = set(nx.articulation_points(nxg)) & g.special
    blocks = [frozenset(b) for b in nx.biconnected_component_edges(nxg)]
    if not split_at or len(blocks) <= 1:
        return [position]

    # merge blocks that share any vertex other than a special cut vertex
    parent = list(range(len(blocks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    touching: dict[str, list[int]] = {}
    for bi, bedges in enumerate(blocks):
        for u, v in bedges:
            touching.setdefault(u, []).append(bi)
            touching.setdefault(v, []).append(bi)
    for v, bis in touching.items():
        if v in split_at:
            continue
        for bi in bis[1:]:
            union(bis[0], bi)

    groups: dict[int, set[frozenset]] = {}
    for bi in range(len(blocks)):
        groups.setdefault(find(bi), set()).add(blocks[bi])
    if len(groups) <= 1:
        return [position]

    fragments = []
    for block_set in groups.values():
        pairs = {frozenset(p) for b in block_set for p in b}
        edge_list = [e for e in g.edges if e.endpoints() in pairs]
        verts = [v for v in g.vertices if any(v in (e.u, e.v) for e in edge_list)]
        vset = set(verts)
        cells = [c for c in g.cells if set(c) <= vset]
        for c in cells:
            assert all(frozenset((c[i], c[(i + 1) % len(c)])) in pairs for i in range(len(c)))
        sub = build_graph(
            verts,
            [(e.id, e.u, e.v) for e in edge_list],
            cells,
            (g.special & vset) | (split_at & vset),
        )
        word = 0
        sub_comp = compiled(sub)
        for eid in sub_comp.ids:
            code = position.code(eid)
            if code:
                word |= code << (2 * sub_comp.index[eid])
        fragments.append(Position(sub, word))
    fragments.sort(key=lambda p: p.graph.digest())
    return fragments


def grundy_sum(fragments: Sequence[Position], **kwargs) -> int:
    """Grundy value of a disjunctive sum: XOR over the fragments."""
    return reduce(xor, (grundy(f, **kwargs) for f in fragments), 0)


def grundy_with_pass(position: Position, passes: int = 1, **kwargs) -> int:
    """Grundy value of the position summed with a nim heap of ``passes``.

    Solved directly on (word, heap) states rather than by XOR, so the pass
    device is verified and not assumed: a move either plays the board or
    shrinks the heap.
    """
    if passes < 0:
        raise ValueError("passes must be non-negative")
    solver = Solver(position.graph, **kwargs)
    comp = solver.comp
    memo: dict[tuple[int, int], int] = {}

    def value(word: int, heap: int) -> int:
        key = (solver.canonical_key(word), heap)
        got = memo.get(key)
        if got is not None:
            return got
        solver._spend_node()
        child_values = {value(w, heap) for w in legal_words(comp, word)}
        child_values.update(value(word, h) for h in range(heap))
        v = mex(child_values)
        memo[key] = v
        return v

    return value(position.word, passes)
