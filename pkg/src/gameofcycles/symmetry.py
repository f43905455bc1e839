"""Brute-force search for automorphisms of an embedded graph.

An embedding automorphism is a vertex bijection that preserves adjacency,
the special set, and the cell list (each cell maps onto a cell, as a cyclic
walk up to rotation and reflection).  Boards in this project are small, so a
pruned backtracking search is plenty; a node budget guards the pathological
cases and lets callers fall back to the identity.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import EmbeddedGraph, canonical_cell


class SymmetryBudgetError(RuntimeError):
    pass


def find_automorphisms(
    graph: EmbeddedGraph, *, budget_nodes: int = 500_000
) -> list[dict[str, str]]:
    """All embedding automorphisms as vertex maps, identity included.

    Raises ``SymmetryBudgetError`` when the backtracking search would expand
    more than ``budget_nodes`` partial assignments.
    """
    verts = sorted(graph.vertices)
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for e in graph.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)

    def signature(v: str) -> tuple:
        return (
            len(adj[v]),
            v in graph.special,
            tuple(sorted(len(adj[w]) for w in adj[v])),
        )

    sig = {v: signature(v) for v in verts}
    candidates = {v: [w for w in verts if sig[w] == sig[v]] for v in verts}
    # assign most-constrained vertices first
    order = sorted(verts, key=lambda v: (len(candidates[v]), v))
    cell_forms = {canonical_cell(c) for c in graph.cells}

    results: list[dict[str, str]] = []
    nodes = 0

    def preserves_cells(mapping: dict[str, str]) -> bool:
        for cell in graph.cells:
            image = tuple(mapping[v] for v in cell)
            if canonical_cell(image) not in cell_forms:
                return False
        return True

    def extend(i: int, mapping: dict[str, str], used: set[str]) -> None:
        nonlocal nodes
        if i == len(order):
            if preserves_cells(mapping):
                results.append(dict(mapping))
            return
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u in adj[v]:
                if u in mapping and mapping[u] not in adj[w]:
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            if nodes > budget_nodes:
                raise SymmetryBudgetError(
                    f"automorphism search exceeded {budget_nodes} nodes"
                )
            mapping[v] = w
            used.add(w)
            extend(i + 1, mapping, used)
            del mapping[v]
            used.discard(w)

    extend(0, {}, set())
    results.sort(key=lambda m: tuple(m[v] for v in verts))
    return results


def edge_action(
    graph: EmbeddedGraph, vertex_map: dict[str, str]
) -> tuple[tuple[int, ...], tuple[bool, ...]]:
    """Translate a vertex map into an edge permutation.

    Returns ``(perm, flip)`` over edge indices in ``graph.edges`` order:
    edge ``i`` maps to edge ``perm[i]``, and ``flip[i]`` marks that the
    image edge is stored with its endpoints the other way round, so a
    u->v arrow on ``i`` becomes a v->u arrow on ``perm[i]``.
    """
    idx = {e.id: i for i, e in enumerate(graph.edges)}
    perm = []
    flip = []
    for e in graph.edges:
        iu, iv = vertex_map[e.u], vertex_map[e.v]
        image = graph.edge_by_pair[frozenset((iu, iv))]
        perm.append(idx[image.id])
        flip.append((image.u, image.v) != (iu, iv))
    return tuple(perm), tuple(flip)


@lru_cache(maxsize=256)
def edge_group(
    graph: EmbeddedGraph, *, max_edges: int = 16, budget_nodes: int = 500_000
) -> tuple[tuple[tuple[int, ...], tuple[bool, ...]], ...]:
    """Edge actions of the full automorphism group, identity first.

    Falls back to the identity action alone for graphs over ``max_edges``
    edges or when the search runs out of budget.
    """
    n = len(graph.edges)
    identity = (tuple(range(n)), (False,) * n)
    if n > max_edges:
        return (identity,)
    try:
        maps = find_automorphisms(graph, budget_nodes=budget_nodes)
    except SymmetryBudgetError:
        return (identity,)
    actions = {edge_action(graph, m) for m in maps}
    actions.discard(identity)
    return (identity,) + tuple(sorted(actions))


def transform_word(word: int, action: tuple[tuple[int, ...], tuple[bool, ...]]) -> int:
    perm, flip = action
    out = 0
    i = 0
    w = word
    while w:
        code = w & 3
        if code:
            if flip[i]:
                code = 3 - code
            out |= code << (2 * perm[i])
        w >>= 2
        i += 1
    return out
