"""k-core decomposition, intra-shell clusters and the k-core component tree."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .graph import Graph, check_graph


@dataclass(frozen=True)
class CoreDecomposition:
    coreness: np.ndarray
    c_max: int

    @property
    def n(self) -> int:
        return self.coreness.size

    @property
    def shells(self) -> dict[int, np.ndarray]:
        """Vertex ids of each nonempty shell, keyed by coreness."""
        order = np.argsort(self.coreness, kind="stable")
        values, starts = np.unique(self.coreness[order], return_index=True)
        parts = np.split(order, starts[1:])
        return {int(c): part for c, part in zip(values, parts)}

    @property
    def c_min(self) -> int:
        return int(self.coreness.min()) if self.n else 0


@dataclass(frozen=True)
class ClusterTable:
    """Connected pieces of each shell.

    ``cluster_of[i]`` is the 1-based cluster label of vertex ``i`` inside its
    shell. ``sizes[c][q - 1]`` is the size of cluster ``q`` of shell ``c``.
    """

    cluster_of: np.ndarray
    sizes: dict[int, list[int]]

    def sector(self, c: int, q: int) -> tuple[float, float]:
        """``(cumulative fraction before q, fraction of q)`` for shell ``c``."""
        sizes = self.sizes[c]
        total = sum(sizes)
        return sum(sizes[:q - 1]) / total, sizes[q - 1] / total

    @property
    def table(self) -> dict[tuple[int, int], tuple[float, float]]:
        return {(c, q): self.sector(c, q)
                for c, sizes in self.sizes.items()
                for q in range(1, len(sizes) + 1)}


@dataclass
class TreeNode:
    id: int
    level: int
    members: np.ndarray
    parent: int | None
    children: list[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.members.size


@dataclass(frozen=True)
class ComponentTree:
    """Connected components of successive k-cores.

    Node 0 is a synthetic root at level 0 holding every vertex; its children
    are the components of the 1-core. A node at level ``k`` has as children
    the components of the ``(k+1)``-core it contains, largest first.
    """

    nodes: list[TreeNode]
    owner: np.ndarray

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def level(self, k: int) -> list[TreeNode]:
        return [node for node in self.nodes if node.level == k]

    def to_dict(self) -> dict:
        return {"nodes": [{"id": node.id, "level": node.level, "size": node.size,
                           "parent": node.parent, "children": list(node.children)}
                          for node in self.nodes]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def core_decomposition(g: Graph) -> CoreDecomposition:
    """Coreness of every vertex by bucket-ordered pruning.

    Vertices are kept in an array sorted by current degree with one bucket
    per degree value; removing a vertex moves each higher-degree neighbor
    down one bucket in constant time, so the whole pass is O(n + e).
    """
    n = g.n
    if n == 0:
        return CoreDecomposition(np.zeros(0, dtype=np.int64), 0)
    deg = g.degrees().tolist()
    adj = g.adjacency
    max_deg = max(deg)

    bin_start = [0] * (max_deg + 2)
    for d in deg:
        bin_start[d + 1] += 1
    for d in range(1, max_deg + 2):
        bin_start[d] += bin_start[d - 1]
    pos = [0] * n
    vert = [0] * n
    fill = bin_start[:]
    for v in range(n):
        pos[v] = fill[deg[v]]
        vert[pos[v]] = v
        fill[deg[v]] += 1

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in adj[v]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bin_start[du] += 1
                deg[u] = du - 1
    coreness = np.asarray(deg, dtype=np.int64)
    return CoreDecomposition(coreness, int(coreness.max()))


def kcore_membership(d: CoreDecomposition, k: int) -> np.ndarray:
    """Sorted ids of the vertices in the k-core."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return np.flatnonzero(d.coreness >= k)


def shell_clusters(g: Graph, d: CoreDecomposition) -> ClusterTable:
    """Split each shell into connected clusters.

    Labels within a shell follow the smallest member id of each cluster.
    """
    adj = g.adjacency
    core = d.coreness.tolist()
    label = [0] * g.n
    sizes: dict[int, list[int]] = {}
    for s in range(g.n):
        if label[s]:
            continue
        c = core[s]
        counts = sizes.setdefault(c, [])
        q = len(counts) + 1
        label[s] = q
        stack = [s]
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for u in adj[v]:
                if not label[u] and core[u] == c:
                    label[u] = q
                    stack.append(u)
        counts.append(size)
    return ClusterTable(np.asarray(label, dtype=np.int64), dict(sorted(sizes.items())))


def component_tree(g: Graph, d: CoreDecomposition) -> ComponentTree:
    """Build the k-core component tree with a descending union-find sweep.

    Shells are added from ``c_max`` down to 1; after shell ``k`` is merged
    the union-find sets are exactly the components of the k-core. Total
    work is proportional to the sum of core sizes, which is at most 2e.
    """
    n = g.n
    core = d.coreness.tolist()
    adj = g.adjacency
    parent = list(range(n))

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    shells = d.shells
    active: list[int] = []
    # level -> component member lists, and vertex -> component index
    levels: dict[int, list[list[int]]] = {}
    lookup: dict[int, dict[int, int]] = {}
    for k in range(d.c_max, 0, -1):
        fresh = shells.get(k, np.zeros(0, dtype=np.int64)).tolist()
        for v in fresh:
            for u in adj[v]:
                if core[u] >= k:
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[ru] = rv
        active.extend(fresh)
        groups: dict[int, list[int]] = {}
        for v in active:
            groups.setdefault(find(v), []).append(v)
        comps = [sorted(members) for members in groups.values()]
        levels[k] = comps
        # per-vertex index, since later unions move the roots
        lookup[k] = {v: idx for idx, members in enumerate(comps) for v in members}

    root = TreeNode(0, 0, np.arange(n, dtype=np.int64), None)
    nodes = [root]
    owner = np.zeros(n, dtype=np.int64)
    frontier = [(root, levels.get(1, []))]
    k = 1
    while frontier:
        next_frontier = []
        for parent_node, comps in frontier:
            comps = sorted(comps, key=lambda m: (-len(m), m[0]))
            for members in comps:
                node = TreeNode(len(nodes), k, np.asarray(members, dtype=np.int64),
                                parent_node.id)
                nodes.append(node)
                parent_node.children.append(node.id)
                shell_members = [v for v in members if core[v] == k]
                owner[shell_members] = node.id
                next_frontier.append(
                    (node, _children_of(members, levels.get(k + 1), lookup.get(k + 1))))
        frontier = next_frontier
        k += 1
    return ComponentTree(nodes, owner)


def _children_of(members, next_comps, next_lookup) -> list[list[int]]:
    if not next_comps:
        return []
    hits = {next_lookup[v] for v in members if v in next_lookup}
    return [next_comps[idx] for idx in sorted(hits)]


class KCoreDecomposition(BaseEstimator):
    """Estimator wrapper computing coreness, clusters and the component tree.

    Attributes
    ----------
    coreness_ : ndarray of shape (n_vertices,)
    c_max_ : int
    decomposition_ : CoreDecomposition
    clusters_ : ClusterTable
    tree_ : ComponentTree
    """

    def fit(self, X, y=None):
        g = check_graph(X)
        self.decomposition_ = core_decomposition(g)
        self.clusters_ = shell_clusters(g, self.decomposition_)
        self.tree_ = component_tree(g, self.decomposition_)
        self.coreness_ = self.decomposition_.coreness
        self.c_max_ = self.decomposition_.c_max
        self.n_vertices_in_ = g.n
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).coreness_


def format_analysis(d: CoreDecomposition, ct: ClusterTable, tree: ComponentTree) -> str:
    """One ``id coreness cluster component_node`` line per vertex."""
    rows = zip(d.coreness.tolist(), ct.cluster_of.tolist(), tree.owner.tolist())
    return "".join(f"{v} {c} {q} {h}\n" for v, (c, q, h) in enumerate(rows))
