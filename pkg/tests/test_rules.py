"""Move legality: sink/source ban, death moves, position validation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gameofcycles import families
from gameofcycles.graph import build_graph
from gameofcycles.rules import (
    IllegalMoveError,
    InvalidPositionError,
    Move,
    Position,
    apply_move,
    compiled,
    is_death_move,
    is_sink_source_violation,
    is_terminal,
    legal_moves,
    legal_words,
    move_reason,
    position_from_json,
    validate_position,
)

import oracle


def test_move_direction_validated():
    with pytest.raises(IllegalMoveError) as err:
        Move("e1", "up")
    assert err.value.reason == "bad-direction"


def test_move_endpoints():
    g = families.cycle(3)
    assert Move("e01", "uv").endpoints(g) == ("v01", "v02")
    assert Move("e01", "vu").endpoints(g) == ("v02", "v01")


def test_unknown_edge_and_already_directed():
    g = families.cycle(3)
    p = Position.empty(g)
    with pytest.raises(IllegalMoveError) as err:
        apply_move(p, Move("e99", "uv"))
    assert err.value.reason == "unknown-edge"
    p = apply_move(p, Move("e01", "uv"))
    with pytest.raises(IllegalMoveError) as err:
        apply_move(p, Move("e01", "vu"))
    assert err.value.reason == "already-directed"


def test_empty_triangle_all_moves_legal():
    p = Position.empty(families.cycle(3))
    got = legal_moves(p)
    assert got == [
        Move("e01", "uv"), Move("e01", "vu"),
        Move("e02", "uv"), Move("e02", "vu"),
        Move("e03", "uv"), Move("e03", "vu"),
    ]


def test_sink_source_ban_on_path():
    # v01 -e01- v02 -e02- v03, middle vertex plain, ends special
    g = families.path(2)
    p = apply_move(Position.empty(g), Move("e01", "uv"))  # arrow into v02
    bad = Move("e02", "vu")  # second arrow into v02: sink
    assert is_sink_source_violation(p, bad)
    assert move_reason(p, bad) == "sink-source"
    with pytest.raises(IllegalMoveError) as err:
        apply_move(p, bad)
    assert err.value.reason == "sink-source"
    good = Move("e02", "uv")  # flow through is fine
    assert move_reason(p, good) is None
    done = apply_move(p, good)
    assert is_terminal(done)


def test_special_vertices_exempt_from_ban():
    g = families.path(1)  # lone markable edge, both ends special
    p = Position.empty(g)
    assert len(legal_moves(p)) == 2
    assert is_terminal(apply_move(p, Move("e01", "uv")))


def test_death_move_on_triangle():
    g = families.cycle(3)
    p = apply_move(Position.empty(g), Move("e01", "uv"))  # v01 -> v02
    dying = Move("e02", "uv")  # v02 -> v03 leaves e03 closing the cycle
    assert is_death_move(p, dying)
    assert not is_sink_source_violation(p, dying)
    assert move_reason(p, dying) == "death-move"
    with pytest.raises(IllegalMoveError) as err:
        apply_move(p, dying)
    assert err.value.reason == "death-move"
    # the inconsistent direction is also dead here: it makes v03 a sink
    assert move_reason(p, Move("e02", "vu")) == "sink-source"


def test_death_needs_consistency():
    # square cell with two opposing arrows: no completion threat remains,
    # so the one move the sink/source rule allows is not a death move even
    # though it leaves an undirected edge on the cell
    g = families.cycle_with_special(4)
    p = Position.empty(g)
    p = apply_move(p, Move("e01", "uv"))  # v01 -> v02, with the walk
    p = apply_move(p, Move("e03", "vu"))  # v04 -> v03, against it
    assert not is_death_move(p, Move("e04", "vu"))
    assert move_reason(p, Move("e04", "uv")) == "sink-source"
    assert legal_moves(p) == [Move("e04", "vu")]


def test_terminal_position_has_no_moves():
    # on the plain triangle every reply to the first arrow is a sink, a
    # source, or a death move, so one arrow ends the game
    g = families.cycle(3)
    p = Position.empty(g)
    while not is_terminal(p):
        p = apply_move(p, legal_moves(p)[0])
    assert legal_moves(p) == []
    assert p.directed_count() == 1


# ----------------------------------------------------------------------
# the size-9 board, played along a fixed line
# ----------------------------------------------------------------------


def test_size9_frozen_line():
    g = families.size9_counterexample()
    p0 = Position.empty(g)
    assert len(legal_moves(p0)) == 18
    p1 = apply_move(p0, Move("central", "uv"))
    p2 = apply_move(p1, Move("side_left", "vu"))
    dead = {e.id for e in g.edges if p2.orientation(e.id) is None
            and not any(m.edge == e.id for m in legal_moves(p2))}
    assert dead == {"diag_left", "top_left"}
    bottom = [m for m in legal_moves(p2) if m.edge == "bottom_left"]
    assert bottom == [Move("bottom_left", "uv")]
    live = {m.edge for m in legal_moves(p2)}
    assert live == {"bottom_left", "bottom_right", "diag_right",
                    "side_right", "top_right"}


# ----------------------------------------------------------------------
# positions as JSON
# ----------------------------------------------------------------------


def test_position_json_round_trip():
    g = families.butterfly("open")
    p = apply_move(Position.empty(g), Move("e1", "uv"))
    p = apply_move(p, Move("e5", "vu"))
    data = p.to_json()
    assert data["orientation"]["e1"] == "uv"
    assert data["orientation"]["e2"] is None
    again = position_from_json(data)
    assert again.word == p.word
    assert again.graph.digest() == g.digest()


def test_position_json_rejects_bad_shapes():
    base = Position.empty(families.cycle(3)).to_json()
    bad = dict(base, orientation=["e01"])
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(bad)
    assert err.value.reason == "malformed"
    bad = dict(base, orientation={"e99": "uv"})
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(bad)
    assert err.value.reason == "unknown-edge"
    bad = dict(base, orientation={"e01": "north"})
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(bad)
    assert err.value.reason == "malformed"


def test_position_json_rejects_unreachable():
    g = families.cycle(3)
    full = dict(Position.empty(g).to_json(),
                orientation={"e01": "uv", "e02": "uv", "e03": "uv"})
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(full)
    assert err.value.reason == "completed-cell"
    pending = dict(Position.empty(g).to_json(),
                   orientation={"e01": "uv", "e02": "uv", "e03": None})
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(pending)
    assert err.value.reason == "pending-cell"
    sink = dict(Position.empty(families.path(2)).to_json(),
                orientation={"e01": "uv", "e02": "vu"})
    with pytest.raises(InvalidPositionError) as err:
        position_from_json(sink)
    assert err.value.reason == "sink-source"


def test_validate_position_word_width():
    g = families.cycle(3)
    with pytest.raises(InvalidPositionError) as err:
        validate_position(Position(g, 1 << 10))
    assert err.value.reason == "malformed"


# ----------------------------------------------------------------------
# agreement with the reference rules and invariants along random play
# ----------------------------------------------------------------------


BOARDS = [
    families.cycle(3),
    families.cycle_with_special(4),
    families.butterfly("open"),
    families.butterfly("closed"),
    families.layered_cake(),
    families.size9_counterexample(),
    families.lollipop(4, pendants=1),
]


@pytest.mark.parametrize("g", BOARDS, ids=lambda g: g.digest()[:8])
def test_legal_moves_match_reference(g):
    rng = random.Random(g.size)
    p = Position.empty(g)
    o = oracle.empty_orientation(g)
    while True:
        got = {(m.edge, m.direction) for m in legal_moves(p)}
        want = set(oracle.legal_options(g, o))
        assert got == want
        assert is_terminal(p) == (not want)
        if not want:
            break
        e, d = rng.choice(sorted(want))
        p = apply_move(p, Move(e, d))
        o = {**o, e: d}


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_random_lines_stay_valid(seed):
    rng = random.Random(seed)
    g = BOARDS[seed % len(BOARDS)]
    p = Position.empty(g)
    while True:
        validate_position(p)  # reachable positions always pass
        moves = legal_moves(p)
        comp = compiled(g)
        assert sorted(legal_words(comp, p.word)) == sorted(
            apply_move(p, m).word for m in moves
        )
        if not moves:
            break
        p = apply_move(p, rng.choice(moves))


def test_pendant_edge_never_markable():
    # a pendant edge off a triangle: any arrow makes its plain tip a sink
    # or a source, so the edge stays undirected for the whole game
    g = build_graph(
        ["a", "b", "c", "t"],
        [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a"), ("e4", "a", "t")],
        [("a", "b", "c")],
    )
    p = Position.empty(g)
    while not is_terminal(p):
        assert all(m.edge != "e4" for m in legal_moves(p))
        p = apply_move(p, legal_moves(p)[0])
    assert p.orientation("e4") is None
