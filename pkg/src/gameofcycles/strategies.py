"""Mirror strategies and tree shortcuts.

A self-inverse embedding automorphism that fixes at most one edge supports a
copycat: answer every move on an edge e with the mirror edge h(e), directed
the opposite way round.  When each cell is invariant or edge-disjoint from
its mirror image the reply is always legal, so the mirror player moves last.
No fixed edge means the copycat plays second and the board solves to grundy
0; exactly one fixed edge means the copycat plays first, opening on that
edge.  ``verify_copycat`` certifies the claim by exhaustive play rather than
trusting the argument.

Trees get a closed form instead: on a branching tree the first player wins
exactly when the markable size is odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import EmbeddedGraph, trim
from .rules import (
    UV,
    VU,
    IllegalMoveError,
    Move,
    Position,
    apply_move,
    legal_moves,
    move_reason,
)
from .symmetry import find_automorphisms


class StrategyError(ValueError):
    pass


class StrategyBudgetError(RuntimeError):
    pass


class CertificateViolationError(RuntimeError):
    """The mirror strategy broke down; ``line`` holds the offending moves."""

    def __init__(self, message: str, line: list[Move] | None = None):
        super().__init__(message)
        self.line = list(line or [])


@dataclass
class Involution:
    """A self-inverse embedding automorphism with at most one fixed edge."""

    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    fixed_edges: tuple[str, ...]

    def vertex(self, v: str) -> str:
        return self.vertex_map[v]

    def edge(self, edge_id: str) -> str:
        return self.edge_map[edge_id]

    def to_json(self) -> dict:
        return {
            "vertexMap": dict(sorted(self.vertex_map.items())),
            "edgeMap": dict(sorted(self.edge_map.items())),
            "fixedEdges": list(self.fixed_edges),
        }


def find_involutions(
    graph: EmbeddedGraph, *, budget_nodes: int = 500_000
) -> list[Involution]:
    """All embedding automorphisms of order <= 2 fixing at most one edge.

    The identity only qualifies on a single-edge board, where "open on the
    fixed edge" is the whole game.  Propagates ``SymmetryBudgetError`` from
    the underlying automorphism search.
    """
    out = []
    for m in find_automorphisms(graph, budget_nodes=budget_nodes):
        if any(m[m[v]] != v for v in m):
            continue
        edge_map: dict[str, str] = {}
        fixed = []
        for e in graph.edges:
            image = graph.edge_by_pair[frozenset((m[e.u], m[e.v]))]
            edge_map[e.id] = image.id
            if image.id == e.id:
                fixed.append(e.id)
        if len(fixed) > 1:
            continue
        out.append(Involution(dict(m), edge_map, tuple(sorted(fixed))))
    return out


def copycat_applicable(graph: EmbeddedGraph, h: Involution) -> bool:
    """Each cell must be invariant or edge-disjoint from its mirror image."""
    for walk in graph.cell_edges:
        own = frozenset(eid for eid, _ in walk)
        image = frozenset(h.edge(eid) for eid in own)
        if image != own and image & own:
            return False
    return True


def mirror_move(graph: EmbeddedGraph, h: Involution, move: Move) -> Move:
    """The bare mirror of a move: the move v->w maps to h(e) as h(w)->h(v).

    Applying it twice gives back the original move.  No legality checking
    here; that is ``copycat_move``'s job.
    """
    tail, head = move.endpoints(graph)
    image = graph.edge_by_id[h.edge(move.edge)]
    if (image.u, image.v) == (h.vertex(head), h.vertex(tail)):
        return Move(image.id, UV)
    return Move(image.id, VU)


def copycat_move(position: Position, h: Involution, opponent_move: Move) -> Move:
    """Mirror reply to the move just played; ``position`` is the board after it.

    Raises ``CertificateViolationError`` when the mirror edge is already
    directed (in particular when the opponent grabs the fixed edge, which is
    only ever the copycat's own opening) or when the reply is illegal.
    """
    reply = mirror_move(position.graph, h, opponent_move)
    if position.orientation(reply.edge) is not None:
        raise CertificateViolationError(
            f"mirror edge {reply.edge!r} is already directed", [opponent_move]
        )
    reason = move_reason(position, reply)
    if reason is not None:
        raise CertificateViolationError(
            f"mirror reply {reply.edge} {reply.direction} is illegal ({reason})",
            [opponent_move, reply],
        )
    return reply


@dataclass
class CopycatCertificate:
    """Outcome of an exhaustive adversary search against the mirror strategy."""

    involution: Involution
    role: str  # "first-player" or "second-player"
    opening: Move | None
    positions: int  # distinct opponent-to-move positions reached
    pairs: int  # opponent move / mirror reply pairs verified

    def to_json(self) -> dict:
        return {
            "role": self.role,
            "opening": None
            if self.opening is None
            else {"edge": self.opening.edge, "dir": self.opening.direction},
            "involution": self.involution.to_json(),
            "positions": self.positions,
            "pairs": self.pairs,
        }


def _line_to(parents: dict, word: int) -> list[Move]:
    moves: list[Move] = []
    while word in parents:
        word, opp, reply = parents[word]
        moves[:0] = [opp, reply]
    return moves


def _explore(start: Position, h: Involution, budget: int) -> tuple[int, int]:
    """Play out every opponent line from ``start`` (opponent to move).

    Positions repeat under transposed move orders, so lines are deduped on
    the resulting word; parent pointers reconstruct a failing line on demand.
    """
    graph = start.graph
    seen = {start.word}
    parents: dict[int, tuple[int, Move, Move]] = {}
    stack = [start.word]
    pairs = 0
    while stack:
        word = stack.pop()
        pos = Position(graph, word)
        for mv in legal_moves(pos):
            pairs += 1
            if pairs > budget:
                raise StrategyBudgetError(
                    f"copycat verification exceeded {budget} move pairs"
                )
            after = apply_move(pos, mv)
            try:
                reply = copycat_move(after, h, mv)
            except CertificateViolationError as exc:
                exc.line[:0] = _line_to(parents, word)
                raise
            nxt = apply_move(after, reply).word
            if nxt not in seen:
                seen.add(nxt)
                parents[nxt] = (word, mv, reply)
                stack.append(nxt)
    return len(seen), pairs


def verify_copycat(
    graph: EmbeddedGraph, h: Involution, *, budget_nodes: int = 2_000_000
) -> CopycatCertificate:
    """Certify the mirror strategy by playing every opponent line.

    Checks that each mirror reply is legal (never a sink/source violation or
    death move, mirror never pre-occupied) and that the copycat always makes
    the last move.  With one fixed edge both opening directions are tried;
    the certificate records the one that works.  Failures raise
    ``CertificateViolationError`` carrying the offending line.
    """
    if not copycat_applicable(graph, h):
        raise CertificateViolationError(
            "a cell meets its mirror image without being invariant"
        )
    root = Position.empty(graph)
    if not h.fixed_edges:
        positions, pairs = _explore(root, h, budget_nodes)
        return CopycatCertificate(h, "second-player", None, positions, pairs)

    (e0,) = h.fixed_edges
    failure: CertificateViolationError | None = None
    for direction in (UV, VU):
        opening = Move(e0, direction)
        try:
            after = apply_move(root, opening)
        except IllegalMoveError as exc:
            failure = CertificateViolationError(
                f"fixed-edge opening is illegal ({exc.reason})", [opening]
            )
            continue
        try:
            positions, pairs = _explore(after, h, budget_nodes)
        except CertificateViolationError as exc:
            exc.line.insert(0, opening)
            failure = exc
            continue
        return CopycatCertificate(h, "first-player", opening, positions, pairs)
    assert failure is not None
    raise failure


# ----------------------------------------------------------------------
# trees
# ----------------------------------------------------------------------


def is_branching_tree(graph: EmbeddedGraph) -> bool:
    """True for (the trimmed form of) a tree whose internal vertices branch.

    Internal means non-special: a special degree-2 vertex stands for a
    trimmed-away pendant and does not break the property.
    """
    t = trim(graph)
    if t.cells or len(t.edges) != len(t.vertices) - 1:
        return False
    return all(t.degree(v) != 2 or v in t.special for v in t.vertices)


def branching_tree_predict(tree: EmbeddedGraph) -> int:
    """Grundy value of a branching tree: markable size mod 2, no search."""
    if not is_branching_tree(tree):
        raise StrategyError("not a branching tree")
    return trim(tree).size % 2


def odd_parent_count(
    tree: EmbeddedGraph, root: str, *, removed: Iterable[str] = ()
) -> int:
    """Number of vertices with an odd number of children, rooted at ``root``.

    Edge ids in ``removed`` are treated as deleted, but parent/child
    orientation always comes from the full tree; deleting one edge therefore
    flips the count's parity by exactly one, which is what the proof-replay
    test leans on.
    """
    if root not in tree.incident:
        raise StrategyError(f"root {root!r} is not a vertex")
    if len(tree.edges) != len(tree.vertices) - 1:
        raise StrategyError("odd_parent_count needs a tree")
    removed_set = set(removed)
    unknown = removed_set - set(tree.edge_by_id)
    if unknown:
        raise StrategyError(f"removed edges not in the tree: {sorted(unknown)}")

    parent: dict[str, str | None] = {root: None}
    order = [root]
    for v in order:
        for eid in tree.incident[v]:
            w = tree.edge_by_id[eid].other(v)
            if w not in parent:
                parent[w] = v
                order.append(w)
    children = {v: 0 for v in tree.vertices}
    for e in tree.edges:
        if e.id in removed_set:
            continue
        head = e.u if parent.get(e.u) == e.v else e.v
        children[e.other(head)] += 1
    return sum(1 for c in children.values() if c % 2)


def ngon_special_predict(n: int) -> int:
    """Grundy value of an n-gon with one special vertex, by the closed form."""
    if n < 3:
        raise StrategyError("an n-gon needs n >= 3")
    if n == 3:
        return 2
    return 0 if n % 2 == 0 else 1
