"""HTTP JSON API for the explorer UI and other clients.

Stateless by design: positions travel in full in every request (two bits
per edge, so they stay tiny) and no session is kept.  Solves run under a
per-request node budget and answer 503 when it runs out, so a huge pasted
board degrades into an explicit "too big" instead of a hung UI.  Solved
values are shared across requests through write-once transposition tables
keyed by graph digest; values are deterministic, so concurrent writers can
only ever agree.

Status codes: 400 malformed input, 404 unknown family, 409 positions that
break the game invariants (sink/source, completed or pending cell), 422
illegal move, 503 budget exhausted.
"""

from __future__ import annotations

from importlib import metadata

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from .families import FAMILIES, FamilyError, generate
from .graph import GraphError, from_json
from .rules import (
    IllegalMoveError,
    InvalidPositionError,
    Move,
    Position,
    apply_move,
    legal_moves,
    move_reason,
    position_from_json,
)
from .solver import (
    BudgetExceededError,
    SolveBudget,
    Solver,
    TranspositionTable,
)

# InvalidPositionError reasons that mean "bad request" rather than
# "well-formed but unreachable position"
_SCHEMA_REASONS = {"malformed", "unknown-edge"}


def _position_from_body(data) -> Position:
    if not isinstance(data, dict):
        raise HTTPException(400, "body must be a JSON object")
    try:
        if "orientation" in data:
            return position_from_json(data)
        return Position.empty(from_json(data))
    except GraphError as exc:
        raise HTTPException(400, str(exc))
    except InvalidPositionError as exc:
        status = 400 if exc.reason in _SCHEMA_REASONS else 409
        raise HTTPException(status, {"reason": exc.reason, "detail": str(exc)})


def _move_from_body(data) -> Move:
    if not isinstance(data, dict) or "edge" not in data:
        raise HTTPException(400, "move must be an object with 'edge' and 'dir'")
    direction = data.get("dir", data.get("direction"))
    try:
        return Move(str(data["edge"]), str(direction))
    except IllegalMoveError as exc:
        raise HTTPException(400, str(exc))


def _coerce_param(value: str):
    low = value.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(value)
    except ValueError:
        pass
    if "," in value:
        return tuple(_coerce_param(part) for part in value.split(","))
    return value


def create_app(*, budget_nodes: int | None = 2_000_000) -> FastAPI:
    app = FastAPI(title="gameofcycles", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    tables: dict[str, TranspositionTable] = {}

    def solver_for(position: Position) -> Solver:
        table = tables.setdefault(position.graph.digest(), TranspositionTable())
        return Solver(
            position.graph,
            budget=SolveBudget(max_nodes=budget_nodes),
            table=table,
        )

    async def json_body(request: Request):
        try:
            return await request.json()
        except Exception:
            raise HTTPException(400, "request body must be valid JSON")

    @app.post("/api/analyze")
    async def analyze(request: Request):
        position = _position_from_body(await json_body(request))
        try:
            report = solver_for(position).analyze(position)
        except BudgetExceededError as exc:
            raise HTTPException(503, str(exc))
        out = report.to_json()
        illegal = []
        legal = {(m.edge, m.direction) for m in legal_moves(position)}
        for edge in position.graph.edges:
            if position.orientation(edge.id) is not None:
                continue
            for direction in ("uv", "vu"):
                if (edge.id, direction) in legal:
                    continue
                illegal.append(
                    {
                        "edge": edge.id,
                        "dir": direction,
                        "reason": move_reason(position, Move(edge.id, direction)),
                    }
                )
        out["illegal"] = illegal
        return out

    @app.post("/api/move")
    async def play_move(request: Request):
        data = await json_body(request)
        if not isinstance(data, dict) or "position" not in data or "move" not in data:
            raise HTTPException(400, "body must carry 'position' and 'move'")
        position = _position_from_body(data["position"])
        move = _move_from_body(data["move"])
        try:
            return apply_move(position, move).to_json()
        except IllegalMoveError as exc:
            raise HTTPException(422, {"reason": exc.reason, "detail": str(exc)})

    @app.get("/api/families")
    async def list_families():
        return {
            "families": [
                {"name": name, "params": entry["params"]}
                for name, entry in sorted(FAMILIES.items())
            ]
        }

    @app.get("/api/families/{name}")
    async def family_graph(name: str, request: Request):
        if name not in FAMILIES:
            raise HTTPException(404, f"unknown family {name!r}")
        params = {
            key: _coerce_param(value)
            for key, value in request.query_params.items()
        }
        try:
            return generate(name, **params).to_json()
        except FamilyError as exc:
            raise HTTPException(400, str(exc))

    @app.get("/api/health")
    async def health():
        try:
            version = metadata.version("gameofcycles")
        except metadata.PackageNotFoundError:
            version = "unknown"
        return {"status": "ok", "version": version}

    return app


app = create_app()
