"""Edge-list ingestion and the simple undirected graph type."""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import ParseError

COMMENT_PREFIXES = ("#", "%")
NODES_HEADER = "# nodes:"


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph over node ids ``0..node_count-1``.

    ``edges`` is an ``(m, 2)`` int64 array, each row ``(u, v)`` with ``u < v``,
    rows unique and sorted lexicographically.
    """

    node_count: int
    edges: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.edges.setflags(write=False)

    @classmethod
    def from_edges(cls, edges, node_count: int | None = None) -> "Graph":
        """Normalize an arbitrary iterable/array of pairs into a Graph.

        Self-loops are dropped and reversed duplicates collapse to one edge.
        """
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if len(arr) and arr.min() < 0:
            raise ValueError("node ids must be nonnegative")
        arr = arr[arr[:, 0] != arr[:, 1]]
        arr = np.sort(arr, axis=1)
        arr = np.unique(arr, axis=0) if len(arr) else arr
        implied = int(arr.max()) + 1 if len(arr) else 0
        if node_count is None:
            node_count = implied
        elif node_count < implied:
            raise ValueError(f"node_count={node_count} but edges reference id {implied - 1}")
        return cls(int(node_count), np.ascontiguousarray(arr))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.node_count, self.edges.tobytes()))


def _parse_int(token: str, lineno: int, source) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"non-integer token {token!r}", lineno, source) from None
    if value < 0:
        raise ParseError(f"negative node id {value}", lineno, source)
    return value


def load_edge_list(
    stream: Iterable[str],
    treat_directed_as_undirected: bool = True,
    compact_ids: bool = False,
    source: str | None = None,
) -> Graph:
    """Parse whitespace-delimited integer pairs into a normalized Graph.

    Lines starting with ``#`` or ``%`` are comments. A ``# nodes: N`` header,
    as written by :func:`write_edge_list`, raises ``node_count`` to at least N
    so trailing isolated nodes survive a round trip.

    ``treat_directed_as_undirected`` exists for call-site clarity: arcs are
    always collapsed, since only simple undirected graphs are supported.
    ``compact_ids`` remaps the ids that appear in edges onto ``0..k-1``,
    dropping phantom isolates created by gaps in the id space.
    """
    if not treat_directed_as_undirected:
        raise ValueError("directed graphs are not supported; only undirected reading is available")
    us: list[int] = []
    vs: list[int] = []
    declared = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(COMMENT_PREFIXES):
            if line.lower().startswith(NODES_HEADER):
                declared = max(declared, _parse_int(line[len(NODES_HEADER):].strip(), lineno, source))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 tokens, got {len(tokens)}", lineno, source)
        us.append(_parse_int(tokens[0], lineno, source))
        vs.append(_parse_int(tokens[1], lineno, source))

    pairs = np.column_stack([np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)])
    if compact_ids:
        if len(pairs):
            _, inverse = np.unique(pairs, return_inverse=True)
            pairs = inverse.reshape(-1, 2)
        return Graph.from_edges(pairs)
    implied = int(pairs.max()) + 1 if len(pairs) else 0
    return Graph.from_edges(pairs, node_count=max(implied, declared))


def read_edge_list(path: str | os.PathLike, **options) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh, source=str(path), **options)


def write_edge_list(graph: Graph, out: TextIO | str | os.PathLike) -> None:
    """Serialize one ``u v`` line per edge, preceded by a ``# nodes:`` header."""
    buf = io.StringIO()
    buf.write(f"{NODES_HEADER} {graph.node_count}\n")
    for u, v in graph.edges.tolist():
        buf.write(f"{u} {v}\n")
    text = buf.getvalue()
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def degree_sequence(graph: Graph) -> np.ndarray:
    """Degree of every node ``0..node_count-1``; isolated nodes have degree 0."""
    return np.bincount(graph.edges.ravel(), minlength=graph.node_count).astype(np.int64)
