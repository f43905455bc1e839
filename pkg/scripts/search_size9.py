"""Exhaustive search for the 2-connected size-9 board that breaks the parity rule.

The documented example is described by this profile:
  - 9 edges, 2-connected, no special vertices, Grundy number 0 (odd
    markable size yet the second player wins: a parity violation);
  - invariant under a reflection of the embedding that fixes exactly one
    edge (the central edge), with the two cells bordering that edge swapped
    by the reflection while sharing it, so the copycat theorem cannot apply;
  - a refutation: after the first player directs the central edge, the
    second player answers on an outermost mirrored edge, killing the rest
    of that half of the board and winning on the remaining four edges.

Any involution with exactly one fixed edge splits the vertices into fixed
vertices and swapped pairs, so enumerating that shape is exhaustive.  For
every reachable board the script tries every (central direction, reply)
line and records how many of the remaining edges are dead, i.e. have no
legal move in either direction.

Outcome of the full run: no board anywhere in the space leaves three edges
dead after the reply; the maximum is two.  That maximum, combined with a
winning mirrored reply, is achieved by a single board up to isomorphism:
two boxes sharing the central edge, each split by a diagonal.  That board
is frozen into ``src/gameofcycles/data/catalog.json``.  Run:

    python3 scripts/search_size9.py
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

import networkx as nx

sys.path.insert(0, "src")

from gameofcycles.graph import GraphError, build_graph, canonical_cell, derive_cells  # noqa: E402
from gameofcycles.rules import Move, Position, apply_move, legal_moves  # noqa: E402
from gameofcycles import solver  # noqa: E402
from gameofcycles.symmetry import edge_action, find_automorphisms  # noqa: E402

EDGES_TOTAL = 9
ORBITS = 4  # 9 = 1 central + 4 mirrored pairs


def candidate_graphs():
    """Yield (vertices, edges) for every mirror-symmetric shape.

    Vertices: fixed f0.. and swapped pairs (xi, yi).  The central edge is
    either fixed-to-fixed (f0,f1) or the swapped pair (x0,y0).  No other edge
    may be fixed, which rules out further fixed-to-fixed and within-pair
    edges.
    """
    seen: set = set()
    for central_kind in ("fixed", "pair"):
        min_f = 2 if central_kind == "fixed" else 0
        for nf in range(min_f, 8):
            for np_ in range(1, 5):
                if not 3 <= nf + 2 * np_ <= 9:
                    continue
                fixed = [f"f{i}" for i in range(nf)]
                pairs = [(f"x{i}", f"y{i}") for i in range(np_)]
                central = (fixed[0], fixed[1]) if central_kind == "fixed" else pairs[0]
                # orbit pool: each entry is a mirrored pair of undirected edges
                pool = []
                for f in fixed:
                    for x, y in pairs:
                        pool.append(((f, x), (f, y)))
                for i, j in itertools.combinations(range(np_), 2):
                    (xi, yi), (xj, yj) = pairs[i], pairs[j]
                    pool.append(((xi, xj), (yi, yj)))
                    pool.append(((xi, yj), (yi, xj)))
                if len(pool) < ORBITS:
                    continue
                for choice in itertools.combinations(pool, ORBITS):
                    edges = [central] + [e for orbit in choice for e in orbit]
                    pair_set = {frozenset(e) for e in edges}
                    if len(pair_set) != EDGES_TOTAL:
                        continue
                    g = nx.Graph(edges)
                    if len(g) != nf + 2 * np_:  # isolated vertices
                        continue
                    if not nx.is_connected(g) or not nx.is_biconnected(g):
                        continue
                    sig = tuple(sorted(tuple(sorted(p)) for p in pair_set))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    yield sorted(g.nodes()), pair_set


def rotations(vertices, inc):
    """Yield every rotation system, fixing the first neighbour everywhere and
    halving by the global reflection at one pivot vertex."""
    names = list(vertices)
    pivot = max(names, key=lambda v: len(inc[v]))

    def options(v):
        rot = inc[v]
        if len(rot) <= 2:
            return [tuple(rot)]
        head, rest = rot[0], rot[1:]
        opts = [(head,) + p for p in itertools.permutations(rest)]
        if v == pivot:
            opts = [p for p in opts if p[1] <= p[-1]]
        return opts

    for combo in itertools.product(*[options(v) for v in names]):
        yield dict(zip(names, combo))


def boards_of(vertices, edge_pairs):
    """Yield every plane embedding (board) of the labelled graph, deduped by
    cell set."""
    triples = [
        (f"e{i+1}", u, v)
        for i, (u, v) in enumerate(sorted(tuple(sorted(p)) for p in edge_pairs))
    ]
    inc = {v: [] for v in vertices}
    for eid, u, v in triples:
        inc[u].append(eid)
        inc[v].append(eid)
    emitted = set()
    for rot in rotations(vertices, inc):
        try:
            cells, dropped = derive_cells(vertices, triples, rot, 0)
        except GraphError:
            continue
        n_faces = len(cells) + len(dropped) + 1
        for outer in range(n_faces):
            cells, dropped = derive_cells(vertices, triples, rot, outer)
            if dropped:  # 2-connected boards have simple faces only
                continue
            key = frozenset(canonical_cell(c) for c in cells)
            if key in emitted:
                continue
            emitted.add(key)
            try:
                yield build_graph(vertices, triples, cells, ())
            except GraphError:
                continue


def unplayable_split(board, pos):
    dead, alive = [], []
    legal = {m.edge for m in legal_moves(pos)}
    for e in board.edges:
        if pos.orientation(e.id):
            continue
        (alive if e.id in legal else dead).append(e.id)
    return sorted(dead), sorted(alive)


def mirror_involutions(board):
    """(sigma, mirror-map, central-id) per involution with one fixed edge."""
    ids = [e.id for e in board.edges]
    for sigma in find_automorphisms(board):
        if all(sigma[v] == v for v in sigma):
            continue
        if any(sigma[sigma[v]] != v for v in sigma):
            continue
        perm, _ = edge_action(board, sigma)
        fixed = [i for i in range(len(ids)) if perm[i] == i]
        if len(fixed) != 1:
            continue
        mirror = {ids[i]: ids[perm[i]] for i in range(len(ids))}
        yield sigma, mirror, ids[fixed[0]]


def central_cells_overlap(board, sigma, central):
    """True when the two cells on the central edge trade places yet share it."""
    indices = board.cells_of_edge[central]
    if len(indices) != 2:
        return False
    own = [canonical_cell(board.cells[ci]) for ci in indices]
    mapped = [canonical_cell(tuple(sigma[v] for v in board.cells[ci])) for ci in indices]
    return own[0] != own[1] and mapped[0] == own[1] and mapped[1] == own[0]


def winning_reply_lines(board, mirror, central):
    """All (d1, reply, d2, dead, alive) where the mirrored reply keeps
    Grundy 0 against the central opening."""
    out = []
    for d1 in ("uv", "vu"):
        pos1 = apply_move(Position(board), Move(central, d1))
        for m in legal_moves(pos1):
            if m.edge == central or mirror[m.edge] == m.edge:
                continue
            pos2 = apply_move(pos1, m)
            if solver.grundy(pos2) != 0:
                continue
            dead, alive = unplayable_split(board, pos2)
            out.append((d1, m.edge, m.direction, dead, alive))
    return out


def check_board(board):
    """Certificates for one board: every winning mirrored reply line."""
    out = []
    grundy_cache = None
    for sigma, mirror, central in mirror_involutions(board):
        if grundy_cache is None:
            grundy_cache = solver.grundy(Position(board))
        if grundy_cache != 0:
            return []
        for d1, e, d2, dead, alive in winning_reply_lines(board, mirror, central):
            out.append({
                "central": central,
                "sigma": sigma,
                "central_cells_overlap": central_cells_overlap(board, sigma, central),
                "line": {"alice": [central, d1], "bob": [e, d2],
                         "dead": dead, "alive": alive},
            })
    return out


def isomorphism_classes(boards):
    """Group boards by graph isomorphism (cells checked via canonical sets)."""
    classes = []
    for b in boards:
        gb = nx.Graph((e.u, e.v) for e in b.edges)
        for rep, members in classes:
            gr = nx.Graph((e.u, e.v) for e in rep.edges)
            if nx.is_isomorphic(gb, gr):
                members.append(b)
                break
        else:
            classes.append((b, [b]))
    return classes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="size9_hits.jsonl")
    ap.add_argument("--progress", type=int, default=500)
    args = ap.parse_args()

    t0 = time.time()
    graphs = boards = zero_boards = 0
    hits: list = []  # (dead-count, board, cert)
    for vertices, edge_pairs in candidate_graphs():
        graphs += 1
        if graphs % args.progress == 0:
            print(f"... {graphs} graphs, {boards} boards, {zero_boards} grundy-0, "
                  f"{time.time()-t0:.0f}s", flush=True)
        for board in boards_of(vertices, edge_pairs):
            boards += 1
            certs = check_board(board)
            if certs:
                zero_boards += 1
            for cert in certs:
                hits.append((len(cert["line"]["dead"]), board, cert))

    best = max((h[0] for h in hits), default=-1)
    top = [(b, c) for d, b, c in hits if d == best]
    with open(args.out, "w") as fh:
        for board, cert in top:
            fh.write(json.dumps({"digest": board.digest(), "graph": board.to_json(),
                                 **cert}) + "\n")
    classes = isomorphism_classes([b for b, _ in top])
    print(f"done: {graphs} graphs, {boards} boards, {zero_boards} with a "
          f"one-fixed-edge reflection and grundy 0, {time.time()-t0:.0f}s")
    print(f"max dead edges after any winning mirrored reply: {best}")
    print(f"boards achieving it: {len(top)} lines on {len({b.digest() for b, _ in top})} "
          f"labelled boards in {len(classes)} isomorphism classes")
    for rep, members in classes:
        cert = next(c for b, c in top if b.digest() == members[0].digest())
        print(f"  class rep {rep.digest()[:12]}: {len(members)} labelled boards, "
              f"example line {cert['line']}")


if __name__ == "__main__":
    main()
