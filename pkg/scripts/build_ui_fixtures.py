#!/usr/bin/env python3
"""Record service traffic for the explorer's offline unit tests.

Walks every position of the triangle and the square with one special
vertex that is reachable through legal moves, and captures for each one
the exact /api/analyze body plus the /api/move outcome for every
conceivable option, legal or not.  The explorer's FakeApi then replays
these bodies verbatim, so its unit tests exercise real service
responses without a running server (the integration suite talks to a
live one).

Output: frontend/tests/fixtures/{triangle,square}-special.json
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from gameofcycles.service import create_app

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def position_key(graph: dict, orientation: dict) -> str:
    return "|".join(f"{e['id']}={orientation[e['id']] or '-'}" for e in graph["edges"])


def record(client: TestClient, n: int) -> dict:
    graph = client.get("/api/families/cycle_with_special", params={"n": n}).json()
    start = {e["id"]: None for e in graph["edges"]}
    positions: dict[str, dict] = {}
    queue = [start]
    while queue:
        orientation = queue.pop()
        key = position_key(graph, orientation)
        if key in positions:
            continue
        body = {**graph, "orientation": orientation}
        report = client.post("/api/analyze", json=body)
        report.raise_for_status()
        entry = {"orientation": orientation, "report": report.json(), "moves": {}}
        for edge in graph["edges"]:
            for direction in ("uv", "vu"):
                resp = client.post(
                    "/api/move",
                    json={"position": body, "move": {"edge": edge["id"], "dir": direction}},
                )
                option = f"{edge['id']}:{direction}"
                if resp.status_code == 200:
                    after = resp.json()["orientation"]
                    entry["moves"][option] = {
                        "status": 200,
                        "next": position_key(graph, after),
                    }
                    queue.append(after)
                else:
                    detail = resp.json()["detail"]
                    entry["moves"][option] = {
                        "status": resp.status_code,
                        "reason": detail["reason"],
                        "detail": detail["detail"],
                    }
        positions[key] = entry
    return {"graph": graph, "start": position_key(graph, start), "positions": positions}


def main() -> None:
    client = TestClient(create_app())
    OUT.mkdir(parents=True, exist_ok=True)
    for n, stem in ((3, "triangle"), (4, "square")):
        data = record(client, n)
        path = OUT / f"{stem}-special.json"
        path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        print(f"{path}: {len(data['positions'])} positions")


if __name__ == "__main__":
    main()
