"""Undirected simple graphs in compressed adjacency form, plus edge-list I/O."""

from __future__ import annotations

import io
import logging
from collections import deque
from typing import Iterable, NamedTuple, Sequence, TextIO

import numpy as np

logger = logging.getLogger(__name__)


class EdgeListParseError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, line: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: expected 2 vertex tokens, got {line!r}")


class ParseStats(NamedTuple):
    self_loops: int
    duplicates: int


class Graph:
    """Immutable undirected simple graph with vertices ``0..n-1``.

    Adjacency is stored CSR-style: the neighbors of ``v`` are
    ``indices[indptr[v]:indptr[v + 1]]``, sorted ascending.

    Parameters
    ----------
    indptr, indices : array-like of int
        CSR adjacency. Must already be symmetric and free of loops and
        repeated neighbors; use :meth:`from_edges` for raw input.
    labels : sequence of str, optional
        Original vertex tokens, one per vertex. Defaults to ``str(v)``.
    """

    __slots__ = ("indptr", "indices", "_labels")

    def __init__(self, indptr, indices, labels: Sequence[str] | None = None):
        indptr = np.asarray(indptr, dtype=np.int64)
        indices = np.asarray(indices, dtype=np.int64)
        if indptr.ndim != 1 or indptr.size == 0 or indptr[0] != 0:
            raise ValueError("indptr must be a 1-d array starting at 0")
        if indptr[-1] != indices.size:
            raise ValueError("indptr[-1] must equal len(indices)")
        if labels is not None and len(labels) != indptr.size - 1:
            raise ValueError("need one label per vertex")
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.indptr = indptr
        self.indices = indices
        self._labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges, labels: Sequence[str] | None = None,
                   return_stats: bool = False):
        """Build a graph on ``n`` vertices from an ``(m, 2)`` edge array.

        Self-loops and repeated edges (in either orientation) are dropped.
        With ``return_stats=True`` also returns a :class:`ParseStats`.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError(f"edge endpoint out of range [0, {n})")
        loops = edges[:, 0] == edges[:, 1]
        kept = edges[~loops]
        lo = np.minimum(kept[:, 0], kept[:, 1])
        hi = np.maximum(kept[:, 0], kept[:, 1])
        keys = np.unique(lo * max(n, 1) + hi)
        lo, hi = keys // max(n, 1), keys % max(n, 1)
        stats = ParseStats(int(loops.sum()), int(len(kept) - len(keys)))

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        graph = cls(indptr, dst[order], labels)
        return (graph, stats) if return_stats else graph

    @classmethod
    def empty(cls) -> "Graph":
        return cls(np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.indptr.size - 1

    @property
    def e(self) -> int:
        return self.indices.size // 2

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            return tuple(str(v) for v in range(self.n))
        return self._labels

    @property
    def adjacency(self) -> list[list[int]]:
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [ind[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> np.ndarray:
        """Each edge once as ``(u, v)`` with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def subgraph(self, vertices) -> "Graph":
        """Induced subgraph on ``vertices``, relabeled ``0..k-1`` in ascending
        original-id order. Labels are carried over."""
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[keep] = np.arange(keep.size)
        e = self.edges()
        if e.size:
            e = remap[e]
            e = e[(e >= 0).all(axis=1)]
        labels = [self.labels[v] for v in keep.tolist()]
        return Graph.from_edges(keep.size, e, labels)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.e})"


def parse_edge_list(source: str | TextIO | Iterable[str], return_stats: bool = False):
    """Read a whitespace-separated edge list.

    Tokens are arbitrary strings, numbered densely in order of first
    appearance. Lines starting with ``#`` and blank lines are skipped.
    Self-loops and repeated edges are dropped and reported through the
    module logger.

    Raises
    ------
    EdgeListParseError
        If a line does not hold exactly two tokens.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    ids: dict[str, int] = {}
    pairs: list[int] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, raw.rstrip("\r\n"))
        for tok in tokens:
            pairs.append(ids.setdefault(tok, len(ids)))
    graph, stats = Graph.from_edges(len(ids), pairs, list(ids), return_stats=True)
    if stats.self_loops or stats.duplicates:
        logger.warning("dropped %d self-loop(s) and %d duplicate edge(s)",
                       stats.self_loops, stats.duplicates)
    return (graph, stats) if return_stats else graph


def format_edge_list(g: Graph) -> str:
    """Serialize ``g`` so that :func:`parse_edge_list` rebuilds the same ids.

    Each vertex is first introduced, in id order, by one edge to its
    smallest neighbor; the remaining edges follow sorted. For a graph that
    came from an edge list this reproduces the first-appearance numbering.
    Isolated vertices cannot be represented.
    """
    labels = g.labels
    adj = g.adjacency
    seen = [False] * g.n
    used = set()
    lines = []
    for v in range(g.n):
        if seen[v] or not adj[v]:
            continue
        u = adj[v][0]
        first, second = (u, v) if u < v else (v, u)
        lines.append(f"{labels[first]} {labels[second]}\n")
        used.add((min(u, v), max(u, v)))
        seen[u] = seen[v] = True
    for u, v in g.edges().tolist():
        if (u, v) not in used:
            lines.append(f"{labels[u]} {labels[v]}\n")
    return "".join(lines)


def format_label_map(g: Graph) -> str:
    return "".join(f"{v}\t{tok}\n" for v, tok in enumerate(g.labels))


def connected_components(g: Graph) -> np.ndarray:
    """Component label per vertex, numbered by ascending smallest member."""
    adj = g.adjacency
    comp = [-1] * g.n
    label = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = label
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if comp[u] < 0:
                    comp[u] = label
                    queue.append(u)
        label += 1
    return np.asarray(comp, dtype=np.int64)


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Ties go to the component with the smallest minimum vertex id.
    """
    if g.n == 0:
        return Graph.empty()
    comp = connected_components(g)
    sizes = np.bincount(comp)
    # argmax returns the first maximum, i.e. the lowest-numbered component.
    return g.subgraph(np.flatnonzero(comp == int(np.argmax(sizes))))


def check_graph(X) -> Graph:
    """Coerce estimator input to a :class:`Graph`.

    Accepts a :class:`Graph`, a scipy sparse adjacency matrix (anything with
    ``tocoo`` and a square ``shape``), or an ``(m, 2)`` integer edge array.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "tocoo") and hasattr(X, "shape"):
        if X.shape[0] != X.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
        coo = X.tocoo()
        return Graph.from_edges(X.shape[0], np.column_stack([coo.row, coo.col]))
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(
            f"expected a Graph, sparse adjacency matrix or (m, 2) edge array; "
            f"got array of shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise TypeError("edge array must hold integer vertex ids")
    n = int(arr.max()) + 1 if arr.size else 0
    return Graph.from_edges(n, arr)
