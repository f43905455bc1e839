"""End-to-end result suite.

One test per headline result, each with the time budget it must meet.  All
values are exact; run with ``pytest tests/test_acceptance.py -v`` to get a
pass/fail line per result.
"""

import random
import time

import pytest

from gameofcycles import families
from gameofcycles.families import FamilySpec
from gameofcycles.rules import Move, Position, apply_move, legal_moves
from gameofcycles.search import corpus_from_families, corpus_from_trees, scan_corpus
from gameofcycles.solver import (
    SolveBudget,
    Solver,
    decompose,
    grundy,
    grundy_sum,
    grundy_with_pass,
    winner,
)
from gameofcycles.strategies import (
    copycat_applicable,
    find_involutions,
    is_branching_tree,
    ngon_special_predict,
    verify_copycat,
)

import oracle


class Deadline:
    def __init__(self, seconds: float):
        self.budget = seconds
        self.start = time.monotonic()

    def check(self, label: str) -> None:
        elapsed = time.monotonic() - self.start
        assert elapsed < self.budget, f"{label}: {elapsed:.1f}s over {self.budget}s budget"
        print(f"{label}: ok in {elapsed:.1f}s")


def test_golden_boards():
    boards = [
        (families.cycle_with_special(3), 3, 2),
        (families.butterfly("open"), 6, 0),
        (families.butterfly("closed"), 6, 3),
        (families.ice_cream_cone(), 10, 0),
        (families.layered_cake(), 9, 1),
        (families.size9_counterexample(), 9, 0),
    ]
    for g, size, value in boards:
        clock = Deadline(5.0)
        assert g.size == size
        assert Solver(g).grundy() == value, g.digest()[:8]
        clock.check(f"golden board size {size} grundy {value}")


def test_special_ngon_closed_form():
    clock = Deadline(60.0)
    for n in range(3, 11):
        g = families.cycle_with_special(n)
        assert Solver(g).grundy() == ngon_special_predict(n), n
    # an odd special n-gon plus one free pass move is a dead-even game
    for n in (5, 7, 9):
        p = Position.empty(families.cycle_with_special(n))
        assert grundy_with_pass(p, 1) == 0, n
    clock.check("special n-gons n=3..10 with pass checks")


def test_branching_trees_exhaustive():
    clock = Deadline(120.0)
    checked = 0
    for t in families.enumerate_trees(11):
        if not is_branching_tree(t):
            continue
        assert Solver(t).grundy() == t.size % 2, t.digest()[:8]
        checked += 1
    assert checked == 66  # the census size itself is a regression guard
    clock.check(f"{checked} branching trees up to 11 edges")


def test_triangle_ngon_wedges_first_player():
    clock = Deadline(120.0)
    values = []
    for n in range(4, 8):
        g = families.wedge_triangle_ngon(n)
        assert winner(Position.empty(g)) == "first", n
        values.append(grundy(Position.empty(families.fishy(n))))
    assert values == [2, 3, 2, 3]
    clock.check("triangle+n-gon wedges n=4..7 first-player wins, values 2,3,2,3")


def test_even_spiders_lose():
    clock = Deadline(60.0)
    for legs in [(2, 2, 2), (2, 2, 4), (2, 4, 4)]:
        g = families.spider(legs)
        assert Solver(g).grundy() == 0, legs
    clock.check("spiders (2,2,2), (2,2,4), (2,4,4) are second-player wins")


def test_lollipop_parity():
    clock = Deadline(60.0)
    for n in range(3, 7):
        for pendants in (1, 2):
            g = families.lollipop(n, pendants=pendants)
            expect = "first" if n % 2 else "second"
            assert winner(Position.empty(g)) == expect, (n, pendants)
            t = families.lollipop(n, pendants=pendants, trimmed=True)
            assert t.size == n
            assert winner(Position.empty(t)) == expect, (n, pendants, "trimmed")
    clock.check("lollipops n=3..6 with 1..2 loose ends follow markable parity")


def test_parity_scan():
    clock = Deadline(120.0)
    report = scan_corpus(
        corpus_from_families([FamilySpec.of("size9_counterexample")])
    )
    assert len(report.parity_violations()) == 1
    (r,) = report.parity_violations()
    assert (r.markable % 2, r.grundy) == (1, 0)  # odd size yet second player wins
    trees = scan_corpus(corpus_from_trees(9))
    assert len(trees.records) == 200
    assert trees.parity_violations() == []
    assert trees.errors() == []
    clock.check("parity scan: size-9 board violates, 200 trees up to 9 edges do not")


def test_reference_equivalence_and_sums():
    clock = Deadline(120.0)
    pool = [
        families.cycle_with_special(3),
        families.cycle_with_special(6),
        families.butterfly("open"),
        families.butterfly("closed"),
        families.layered_cake(),
        families.size9_counterexample(),
        families.ice_cream_cone(),
        families.fishy(4),
        families.fishy(6),
        families.fishy(7),
        families.windmill(3),
        families.windmill(3, nested=True),
        families.box(2),
        families.box(3),
        families.lollipop(5, pendants=2),
        families.spider((2, 2, 4)),
    ]
    assert all(g.size <= 10 for g in pool)
    rng = random.Random(20250825)
    for _ in range(200):
        g = rng.choice(pool)
        p = Position.empty(g)
        # walk to a random reachable position small enough for the
        # memoization-free reference recursion
        target = rng.randint(3, 5)
        while g.size - p.directed_count() > target:
            moves = legal_moves(p)
            if not moves:
                break
            p = apply_move(p, rng.choice(moves))
        orient = {e.id: p.orientation(e.id) for e in g.edges}
        assert Solver(g).grundy(p) == oracle.grundy(g, orient), (g.digest()[:8], p.word)

    for a in (3, 4, 5):
        for b in (3, 4, 5):
            whole = Position.empty(families.wedge_cycles(a, b, special=True))
            frags = decompose(whole)
            assert len(frags) == 2
            assert grundy(whole) == grundy_sum(frags), (a, b)
            assert grundy(whole) == ngon_special_predict(a) ^ ngon_special_predict(b)
    clock.check("200 sampled positions match the reference solver; wedge sums split")


def test_copycat_certificates():
    clock = Deadline(60.0)
    g = families.butterfly("open")
    certs = [verify_copycat(g, h) for h in find_involutions(g)]
    assert certs and all(c.role == "second-player" for c in certs)
    assert Solver(g).grundy() == 0
    for n in (4, 6, 8):
        gn = families.cycle_with_special(n)
        (h,) = find_involutions(gn)
        cert = verify_copycat(gn, h)
        assert cert.role == "second-player", n
        assert Solver(gn).grundy() == 0, n
    s9 = families.size9_counterexample()
    (h9,) = find_involutions(s9)
    assert not copycat_applicable(s9, h9)
    clock.check("mirror certificates for the butterfly and even special n-gons")


def test_cell_completion_closure():
    # playing the last edge of a threatened cell can never be blocked by the
    # sink/source rule: walk every position reachable under the sink/source
    # ban alone (stopping at completed cells) and check each completion
    clock = Deadline(120.0)
    boards = [
        families.generate(e["family"], **e["params"])
        for e in families.goldens()
        if e["size"] <= 9
    ]
    assert len(boards) >= 12
    positions = 0
    for g in boards:
        index = {e.id: i for i, e in enumerate(g.edges)}
        start = tuple([None] * len(g.edges))
        seen = {start}
        frontier = [start]
        while frontier:
            state = frontier.pop()
            orient = dict(zip(index, state))
            positions += 1
            for cell in g.cells:
                undirected, consistent = oracle.cell_state(g, orient, cell)
                if len(undirected) == 1 and consistent:
                    (eid,) = undirected
                    completions = [
                        d for d in ("uv", "vu")
                        if oracle.cell_state(
                            g, {**orient, eid: d}, cell
                        )[1]
                    ]
                    for d in completions:
                        bad = {**orient, eid: d}
                        e = g.edge_by_id[eid]
                        assert not oracle.is_sink_or_source(g, bad, e.u), (g.digest()[:8], state)
                        assert not oracle.is_sink_or_source(g, bad, e.v), (g.digest()[:8], state)
            if oracle.completed_cell(g, orient):
                continue
            for eid, d in oracle.sinkless_options(g, orient):
                child = list(state)
                child[index[eid]] = d
                child_t = tuple(child)
                if child_t not in seen:
                    seen.add(child_t)
                    frontier.append(child_t)
    clock.check(f"cell completion closed over {positions} reachable positions")


def test_recorded_golden_regression():
    clock = Deadline(120.0)
    entries = families.goldens()
    for e in entries:
        g = families.generate(e["family"], **e["params"])
        assert g.digest() == e["digest"], e
        assert g.size == e["size"], e
        assert Solver(g).grundy() == e["grundy"], e
    windmills = [e for e in entries if e["family"] in ("windmill", "box")]
    assert len(windmills) >= 8
    assert any(e["grundy"] == 3 for e in windmills)
    clock.check(f"{len(entries)} recorded goldens replayed bit-exactly")


def test_performance_budget():
    # a 14-markable-edge board must solve inside a minute within a bounded
    # transposition table (4M entries, far under 4 GB)
    clock = Deadline(60.0)
    g = families.wedge_cycles(7, 7)
    assert g.size == 14
    s = Solver(g, budget=SolveBudget(max_table_entries=4_000_000))
    assert s.grundy() == 0
    assert len(s.table) <= 4_000_000
    clock.check(f"14-edge solve, {len(s.table)} table entries, {s.nodes} nodes")
