"""Record the golden-suite results into src/gameofcycles/data/goldens.json.

Each entry freezes (family, params, digest, size, grundy) for one board.
The digest pins the transcription: if a generator changes shape, the replay
fails on the digest before anyone stares at a wrong grundy number.  Slow
family members (windmill(5) and up, box(5)) are deliberately left out to
keep the replay under ten seconds.
"""

from __future__ import annotations

import json
import pathlib
import time

from gameofcycles.families import generate
from gameofcycles.solver import Solver

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "gameofcycles" / "data" / "goldens.json"

SUITE: list[tuple[str, dict]] = [
    ("cycle_with_special", {"n": 3}),
    ("butterfly", {"variant": "open"}),
    ("butterfly", {"variant": "closed"}),
    ("ice_cream_cone", {}),
    ("layered_cake", {}),
    ("size9_counterexample", {}),
    ("fishy", {"n": 4}),
    ("fishy", {"n": 5}),
    ("fishy", {"n": 6}),
    ("fishy", {"n": 7}),
    ("windmill", {"k": 1}),
    ("windmill", {"k": 2}),
    ("windmill", {"k": 3}),
    ("windmill", {"k": 4}),
    ("windmill", {"k": 2, "nested": True}),
    ("windmill", {"k": 3, "nested": True}),
    ("windmill", {"k": 4, "nested": True}),
    ("box", {"k": 1}),
    ("box", {"k": 2}),
    ("box", {"k": 3}),
    ("box", {"k": 4}),
    ("wedge_cycles", {"a": 7, "b": 7}),
]


def main() -> None:
    entries = []
    for name, params in SUITE:
        g = generate(name, **params)
        t0 = time.time()
        grundy = Solver(g).grundy()
        dt = time.time() - t0
        entries.append({
            "family": name,
            "params": params,
            "digest": g.digest(),
            "size": g.size,
            "grundy": grundy,
        })
        print(f"{name} {params} size={g.size} grundy={grundy} ({dt:.2f}s)")
    assert any(e["grundy"] == 3 for e in entries)
    OUT.write_text(json.dumps({"entries": entries}, indent=2) + "\n")
    print(f"wrote {OUT} ({len(entries)} entries)")


if __name__ == "__main__":
    main()
