"""Timestamped edge lists in, graph/bounds JSON out.

Edge-list lines are ``u v t`` separated by whitespace; ``#`` starts a comment.
``t`` is integer epoch seconds or an ISO-8601 date/datetime (UTC assumed when
no offset is given).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .graph import Graph, GraphSeries, normalize_edge

FORMAT_VERSION = 1


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeEvent:
    u: str
    v: str
    t: datetime

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"self-loop event on node {self.u!r}")


@dataclass(frozen=True)
class WindowSpec:
    mode: Literal["day", "month", "count"] = "day"
    size: int = 1
    start: datetime | None = None
    end: datetime | None = None
    keep_empty: bool = False

    def __post_init__(self):
        if self.mode not in ("day", "month", "count"):
            raise ValueError(f"unknown window mode {self.mode!r}")
        if self.size < 1:
            raise ValueError("window size must be >= 1")

    @classmethod
    def parse(cls, text: str, keep_empty: bool = False) -> WindowSpec:
        """``day``, ``month`` or ``count:N`` (N consecutive events per window)."""
        if text in ("day", "month"):
            return cls(text, keep_empty=keep_empty)
        if text.startswith("count:"):
            return cls("count", int(text.split(":", 1)[1]), keep_empty=keep_empty)
        raise ValueError(f"bad window {text!r}; expected day, month or count:N")


class IdMap:
    """External (string) ids <-> dense 1-based internal indices."""

    def __init__(self, external: Sequence[str] = ()):
        self._ext: list[str] = []
        self._int: dict[str, int] = {}
        for x in external:
            self.add(x)

    def add(self, ext: str) -> int:
        idx = self._int.get(ext)
        if idx is None:
            self._ext.append(ext)
            idx = self._int[ext] = len(self._ext)
        return idx

    def internal(self, ext: str) -> int:
        return self._int[ext]

    def external(self, idx: int) -> str:
        return self._ext[idx - 1]

    def __len__(self) -> int:
        return len(self._ext)

    def externals(self) -> list[str]:
        return list(self._ext)


def parse_time(text: str) -> datetime:
    if text.lstrip("-").isdigit():
        return datetime.fromtimestamp(int(text), tz=timezone.utc)
    s = text[:-1] + "+00:00" if text.endswith("Z") else text
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def read_events(path: str | Path) -> list[EdgeEvent]:
    events = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise IngestError(f"{path}:{lineno}: expected 'u v t', got {raw.rstrip()!r}")
            u, v, t = parts
            try:
                events.append(EdgeEvent(u, v, parse_time(t)))
            except ValueError as exc:
                raise IngestError(f"{path}:{lineno}: {exc}") from None
    if not events:
        raise IngestError(f"{path}: no edge events")
    return events


def _window_key(ev: EdgeEvent, spec: WindowSpec, rank: int):
    if spec.mode == "day":
        return ev.t.date().toordinal()
    if spec.mode == "month":
        return ev.t.year * 12 + ev.t.month - 1
    return rank // spec.size


def window_events(events: Iterable[EdgeEvent], spec: WindowSpec) -> list[list[EdgeEvent]]:
    evs = [e for e in events
           if (spec.start is None or e.t >= spec.start) and (spec.end is None or e.t < spec.end)]
    evs.sort(key=lambda e: e.t)  # stable: file order within equal timestamps
    buckets: dict[int, list[EdgeEvent]] = {}
    for rank, ev in enumerate(evs):
        buckets.setdefault(_window_key(ev, spec, rank), []).append(ev)
    if not buckets:
        return []
    keys = sorted(buckets)
    if spec.keep_empty and spec.mode != "count":
        keys = list(range(keys[0], keys[-1] + 1))
    return [buckets.get(k, []) for k in keys]


def build_series(windows: Sequence[Sequence[EdgeEvent]]) -> tuple[GraphSeries, IdMap]:
    ids = IdMap()
    graphs = []
    for win in windows:
        pairs = set()
        for ev in win:
            pairs.add(normalize_edge(ids.add(ev.u), ids.add(ev.v)))
        graphs.append(Graph(len(ids), frozenset(pairs)))
    return GraphSeries(tuple(graphs)), ids


def ingest(path: str | Path, window: WindowSpec = WindowSpec()) -> tuple[GraphSeries, IdMap]:
    windows = window_events(read_events(path), window)
    if not windows:
        raise IngestError(f"{path}: no events inside the requested window bounds")
    return build_series(windows)


def write_edge_list(series: GraphSeries, path: str | Path,
                    start: date = date(2000, 1, 1), header: str | None = None) -> None:
    """One ISO date per snapshot; ingest with day windows to read it back.

    Edges are written by (larger endpoint, smaller endpoint) so that first
    appearance order reproduces node indices.
    """
    with open(path, "w") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for t, g in enumerate(series.graphs):
            stamp = (start + timedelta(days=t)).isoformat()
            for i, j in sorted(g.edges, key=lambda e: (e[1], e[0])):
                fh.write(f"{i} {j} {stamp}\n")


def graph_to_dict(g: Graph, ids: IdMap | None = None) -> dict:
    doc = {"format_version": FORMAT_VERSION, "n": g.n_nodes,
           "edges": [list(e) for e in g.sorted_edges()]}
    if ids is not None:
        doc["ids"] = [ids.external(i) if i <= len(ids) else None
                      for i in range(1, g.n_nodes + 1)]
    return doc


def dumps_graph(g: Graph, ids: IdMap | None = None) -> str:
    return json.dumps(graph_to_dict(g, ids), sort_keys=True) + "\n"


def emit_graph(g: Graph, path: str | Path, ids: IdMap | None = None) -> None:
    Path(path).write_text(dumps_graph(g, ids))


def graph_from_dict(doc: dict) -> Graph:
    return Graph.from_edges(int(doc["n"]), doc["edges"])


def load_graph(path: str | Path) -> Graph:
    return graph_from_dict(json.loads(Path(path).read_text()))
