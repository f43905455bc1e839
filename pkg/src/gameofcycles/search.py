"""Corpus scans: grundy histograms, parity violations, high-grundy hunting.

A corpus is a list of ``(label, graph)`` pairs; helpers build one from
family specs, from the tree enumeration, or from a graph-JSON file.  Scans
are embarrassingly parallel over graphs, persist progress to a state file
after every batch, and resume bit-exactly as long as the corpus digest
matches.  Records come back sorted by graph digest, so the aggregate report
does not depend on worker count or completion order.
"""

from __future__ import annotations

import hashlib
import json
import pathlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .families import FamilySpec, enumerate_trees, generate
from .graph import EmbeddedGraph, from_json, trim
from .solver import BudgetExceededError, SolveBudget, Solver


class ScanStateError(RuntimeError):
    pass


DEFAULT_THRESHOLD = 4


@dataclass
class ScanRecord:
    label: str
    digest: str
    size: int
    markable: int
    two_connected: bool
    grundy: int | None
    winner: str | None
    parity_violation: bool
    high_grundy: bool
    recheck: int | None
    error: str | None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "digest": self.digest,
            "size": self.size,
            "markable": self.markable,
            "twoConnected": self.two_connected,
            "grundy": self.grundy,
            "winner": self.winner,
            "parityViolation": self.parity_violation,
            "highGrundy": self.high_grundy,
            "recheck": self.recheck,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ScanRecord":
        return cls(
            label=data["label"],
            digest=data["digest"],
            size=data["size"],
            markable=data["markable"],
            two_connected=data["twoConnected"],
            grundy=data["grundy"],
            winner=data["winner"],
            parity_violation=data["parityViolation"],
            high_grundy=data["highGrundy"],
            recheck=data["recheck"],
            error=data["error"],
        )


@dataclass
class ScanReport:
    records: list[ScanRecord]
    threshold: int

    def histogram(self) -> dict[int, dict[int, int]]:
        """markable size -> grundy -> count, solved graphs only."""
        out: dict[int, dict[int, int]] = {}
        for r in self.records:
            if r.grundy is None:
                continue
            out.setdefault(r.markable, {})
            out[r.markable][r.grundy] = out[r.markable].get(r.grundy, 0) + 1
        return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}

    def parity_violations(self) -> list[ScanRecord]:
        return [r for r in self.records if r.parity_violation]

    def high_grundy(self) -> list[ScanRecord]:
        return [r for r in self.records if r.high_grundy]

    def errors(self) -> list[ScanRecord]:
        return [r for r in self.records if r.error]

    def summary(self) -> dict:
        return {
            "graphs": len(self.records),
            "threshold": self.threshold,
            "histogram": {
                str(size): {str(g): c for g, c in by_grundy.items()}
                for size, by_grundy in self.histogram().items()
            },
            "parityViolations": [r.label for r in self.parity_violations()],
            "highGrundy": [r.label for r in self.high_grundy()],
            "errors": [r.label for r in self.errors()],
        }


# ----------------------------------------------------------------------
# corpus sources
# ----------------------------------------------------------------------


Corpus = Sequence[tuple[str, EmbeddedGraph]]


def _spec_label(spec: FamilySpec) -> str:
    if not spec.params:
        return spec.name
    inner = ",".join(f"{k}={v}" for k, v in spec.params)
    return f"{spec.name}({inner})"


def corpus_from_families(specs: Iterable[FamilySpec]) -> list[tuple[str, EmbeddedGraph]]:
    return [(_spec_label(s), generate(s)) for s in specs]


def corpus_from_trees(max_edges: int) -> list[tuple[str, EmbeddedGraph]]:
    out = []
    for i, t in enumerate(enumerate_trees(max_edges)):
        out.append((f"tree{t.size:02d}-{i:03d}", t))
    return out


def corpus_from_file(path: str | pathlib.Path) -> list[tuple[str, EmbeddedGraph]]:
    """Read a corpus file: a JSON array of graphs, or {"graphs": [...]}."""
    data = json.loads(pathlib.Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("graphs", [])
    if not isinstance(data, list):
        raise ScanStateError("corpus file must hold a JSON array of graphs")
    return [(f"file-{i:04d}", from_json(g)) for i, g in enumerate(data)]


def corpus_digest(corpus: Corpus) -> str:
    payload = json.dumps([[label, g.digest()] for label, g in corpus])
    return hashlib.sha256(payload.encode()).hexdigest()


# ----------------------------------------------------------------------
# the scan itself
# ----------------------------------------------------------------------


def _scan_one(args: tuple[str, dict, int, int | None]) -> dict:
    """Worker body; takes and returns plain JSON so it crosses processes."""
    label, graph_json, threshold, budget_nodes = args
    g = from_json(graph_json)
    markable = trim(g).size
    nxg = nx.Graph((e.u, e.v) for e in g.edges)
    two_connected = len(g.vertices) >= 2 and nx.is_biconnected(nxg)
    rec = ScanRecord(
        label=label,
        digest=g.digest(),
        size=g.size,
        markable=markable,
        two_connected=two_connected,
        grundy=None,
        winner=None,
        parity_violation=False,
        high_grundy=False,
        recheck=None,
        error=None,
    )
    budget = SolveBudget(max_nodes=budget_nodes)
    try:
        grundy = Solver(g, budget=budget).grundy()
    except BudgetExceededError:
        rec.error = "budget-exceeded"
        return rec.to_json()
    rec.grundy = grundy
    rec.winner = "first" if grundy else "second"
    rec.parity_violation = (markable % 2 == 1) == (grundy == 0)
    if grundy >= threshold:
        rec.high_grundy = True
        rec.recheck = Solver(g, use_symmetry=False, budget=budget).grundy()
        if rec.recheck != grundy:
            rec.error = "symmetry-mismatch"
    return rec.to_json()


def _load_state(path: pathlib.Path, digest: str) -> dict[str, dict]:
    try:
        state = json.loads(path.read_text())
        if state["corpusDigest"] != digest:
            raise ScanStateError(
                "corpus digest mismatch: the state file belongs to a different corpus"
            )
        done = state["records"]
        if not isinstance(done, dict):
            raise TypeError
        return dict(done)
    except ScanStateError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ScanStateError(f"corrupt scan state file {path}") from exc


def scan_corpus(
    corpus: Corpus,
    *,
    threshold: int = DEFAULT_THRESHOLD,
    budget_nodes: int | None = None,
    workers: int = 1,
    state_file: str | pathlib.Path | None = None,
) -> ScanReport:
    """Solve every corpus graph and aggregate the records.

    Per-graph budget overruns are recorded, not fatal.  With ``state_file``
    set, progress persists after every batch and an interrupted scan resumes
    where it stopped; resuming against a different corpus raises
    ``ScanStateError``.
    """
    digest = corpus_digest(corpus)
    path = pathlib.Path(state_file) if state_file else None
    done: dict[str, dict] = {}
    if path and path.exists():
        done = _load_state(path, digest)

    pending = [
        (str(i), (label, g.to_json(), threshold, budget_nodes))
        for i, (label, g) in enumerate(corpus)
        if str(i) not in done
    ]

    def save() -> None:
        if path:
            path.write_text(json.dumps({"corpusDigest": digest, "records": done}))

    batch = max(1, workers) * 4
    if workers > 1 and pending:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(pending), batch):
                chunk = pending[start : start + batch]
                for (key, _), result in zip(
                    chunk, pool.map(_scan_one, [args for _, args in chunk])
                ):
                    done[key] = result
                save()
    else:
        for start in range(0, len(pending), batch):
            for key, args in pending[start : start + batch]:
                done[key] = _scan_one(args)
            save()

    records = [ScanRecord.from_json(done[str(i)]) for i in range(len(corpus))]
    records.sort(key=lambda r: (r.digest, r.label))
    return ScanReport(records, threshold)
