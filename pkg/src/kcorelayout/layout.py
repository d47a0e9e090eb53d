"""Concentric-shell layout: coreness sets the ring, clusters set the sector,
fragmented cores get their own offset sub-circles."""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .decomposition import (ClusterTable, ComponentTree, CoreDecomposition,
                            component_tree, core_decomposition, shell_clusters)
from .graph import Graph, check_graph

TWO_PI = 2.0 * math.pi
# hue in degrees of the lowest-coreness color; the highest is red (0)
VIOLET_HUE = 270.0

# stream tags, so each kind of draw gets an independent generator
_EDGE_STREAM = 0
_PHI_STREAM = 1
_VERTEX_STREAM = 2


@dataclass(frozen=True)
class LayoutConfig:
    epsilon: float = 0.18
    delta: float = 1.3
    gamma: float = 1.5
    edge_fraction: float = 0.1
    seed: int = 0
    size_min: float = 1.0
    size_max: float = 6.0

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not 0.0 <= self.edge_fraction <= 1.0:
            raise ValueError(f"edge_fraction must lie in [0, 1], got {self.edge_fraction}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) \
                or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        if not 0 <= self.size_min <= self.size_max:
            raise ValueError("need 0 <= size_min <= size_max")


@dataclass(frozen=True)
class Layout:
    """Drawing of one graph.

    ``rho``/``alpha`` are polar coordinates relative to the center of the
    vertex's owning component-tree node; ``positions`` are final Cartesian
    coordinates. ``centers`` and ``units`` are indexed by tree node id.
    """

    positions: np.ndarray
    rho: np.ndarray
    alpha: np.ndarray
    owner: np.ndarray
    coreness: np.ndarray
    degree: np.ndarray
    colors: list[str]
    sizes: np.ndarray
    edges: np.ndarray
    centers: np.ndarray
    units: np.ndarray
    c_max: int
    config: LayoutConfig

    @property
    def n(self) -> int:
        return self.positions.shape[0]


def vertex_rng(seed: int, i: int) -> np.random.Generator:
    """Generator private to vertex ``i``, so draws do not depend on order."""
    return np.random.default_rng([seed, _VERTEX_STREAM, i])


def radial_coordinate(i: int, g: Graph, d: CoreDecomposition, cfg: LayoutConfig) -> float:
    """Distance of a non-top vertex from its component center, in units.

    The ring index ``c_max - c_i`` is blended with the mean ring index of
    the neighbors at least as central as ``i``; ``epsilon`` sets the blend.
    A vertex with no such neighbor sits on its ring's outer edge.
    """
    c = d.coreness
    ci = int(c[i])
    if ci == d.c_max:
        raise ValueError("top-shell vertices are placed by place_top_shell")
    inner = [int(c[j]) for j in g.neighbors(i) if c[j] >= ci]
    base = (1.0 - cfg.epsilon) * (d.c_max - ci)
    if not inner:
        return base
    return base + cfg.epsilon / len(inner) * sum(d.c_max - cj for cj in inner)


def radial_coordinates(g: Graph, d: CoreDecomposition, epsilon: float) -> np.ndarray:
    """Vectorized :func:`radial_coordinate` over all vertices (top shell gets 0)."""
    c = d.coreness
    src = np.repeat(np.arange(g.n), g.degrees())
    dst = g.indices
    inner = c[dst] >= c[src]
    count = np.bincount(src[inner], minlength=g.n)
    total = np.bincount(src[inner], weights=(d.c_max - c[dst[inner]]).astype(float),
                        minlength=g.n)
    mean = np.divide(total, count, out=np.zeros(g.n), where=count > 0)
    rho = (1.0 - epsilon) * (d.c_max - c) + epsilon * mean
    rho[c == d.c_max] = 0.0
    return rho


def angular_coordinate(cumulative: float, fraction: float, rng: np.random.Generator) -> float:
    """Angle inside the sector ``[2pi*cum, 2pi*(cum+fraction)]`` of a cluster.

    The offset is normal around the sector midpoint with a standard
    deviation of a sixth of the sector, clamped to the sector.
    """
    offset = rng.normal(fraction / 2.0, fraction / 6.0)
    offset = min(max(offset, 0.0), fraction)
    alpha = TWO_PI * (cumulative + offset)
    return min(alpha, math.nextafter(TWO_PI, 0.0))


def place_top_shell(unit: float, rng: np.random.Generator) -> tuple[float, float]:
    """Area-uniform point in the disk of radius ``unit``."""
    rho = unit * math.sqrt(rng.random())
    alpha = TWO_PI * rng.random()
    return rho, alpha


def component_centers(sizes, parent_center, parent_unit: float, level: int, c_max: int,
                      delta: float, phi_ini: float) -> np.ndarray:
    """Centers of sibling components, given in their numbering order.

    Larger siblings sit closer to the parent center; a lone child keeps
    the parent center exactly.
    """
    sizes = np.asarray(sizes, dtype=float)
    total = sizes.sum()
    varrho = 1.0 - sizes / total
    phi = phi_ini + TWO_PI * np.cumsum(sizes) / total
    reach = delta * (c_max - level) * parent_unit * varrho
    return np.column_stack([parent_center[0] + reach * np.cos(phi),
                            parent_center[1] + reach * np.sin(phi)])


def component_units(sizes, parent_unit: float) -> np.ndarray:
    sizes = np.asarray(sizes, dtype=float)
    return sizes / sizes.sum() * parent_unit


def final_coordinates(rho, alpha, center, unit, gamma: float) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    center = np.asarray(center, dtype=float)
    unit = np.asarray(unit, dtype=float)
    scale = gamma * unit * rho
    return np.stack([center[..., 0] + scale * np.cos(alpha),
                     center[..., 1] + scale * np.sin(alpha)], axis=-1)


def color_of(c: int, c_min: int, c_max: int) -> str:
    """Rainbow color from violet (``c_min``) to red (``c_max``) as ``#rrggbb``."""
    if c_max <= c_min:
        t = 1.0
    else:
        t = (c - c_min) / (c_max - c_min)
    hue = VIOLET_HUE * (1.0 - t) / 360.0
    r, g, b = colorsys.hsv_to_rgb(hue, 1.0, 1.0)
    return "#{:02x}{:02x}{:02x}".format(*(int(round(x * 255)) for x in (r, g, b)))


def size_of(degree, d_max: int, size_min: float, size_max: float):
    """Glyph radius growing with ``log(1 + degree)``."""
    degree = np.asarray(degree, dtype=float)
    if d_max <= 0:
        return np.full_like(degree, size_min) if degree.ndim else size_min
    out = size_min + (size_max - size_min) * np.log1p(degree) / math.log1p(d_max)
    return out if out.ndim else float(out)


def sample_edges(g: Graph, fraction: float, rng: np.random.Generator) -> np.ndarray:
    """Keep each edge independently with probability ``fraction``."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    edges = g.edges()
    return edges[rng.random(len(edges)) < fraction]


def component_geometry(tree: ComponentTree, c_max: int, cfg: LayoutConfig):
    """Center and unit length of every tree node, top-down from the origin."""
    centers = np.zeros((len(tree.nodes), 2))
    units = np.zeros(len(tree.nodes))
    units[0] = 1.0
    for node in tree.nodes:
        if not node.children:
            continue
        kids = [tree.nodes[h] for h in node.children]
        sizes = [kid.size for kid in kids]
        phi_ini = TWO_PI * np.random.default_rng([cfg.seed, _PHI_STREAM, node.id]).random()
        ids = np.asarray(node.children)
        if len(kids) == 1:
            centers[ids] = centers[node.id]
            units[ids] = units[node.id]
            continue
        centers[ids] = component_centers(sizes, centers[node.id], units[node.id],
                                         kids[0].level, c_max, cfg.delta, phi_ini)
        units[ids] = component_units(sizes, units[node.id])
    return centers, units


def build_layout(g: Graph, d: CoreDecomposition, ct: ClusterTable, tree: ComponentTree,
                 cfg: LayoutConfig) -> Layout:
    centers, units = component_geometry(tree, d.c_max, cfg)
    rho = radial_coordinates(g, d, cfg.epsilon)
    alpha = np.zeros(g.n)
    coreness = d.coreness
    owner = tree.owner
    clusters = ct.cluster_of
    for i in range(g.n):
        rng = vertex_rng(cfg.seed, i)
        c = int(coreness[i])
        if c == d.c_max:
            rho[i], alpha[i] = place_top_shell(float(units[owner[i]]), rng)
        else:
            cum, frac = ct.sector(c, int(clusters[i]))
            alpha[i] = angular_coordinate(cum, frac, rng)
    positions = final_coordinates(rho, alpha, centers[owner], units[owner], cfg.gamma)
    positions = positions.reshape(g.n, 2)

    degree = g.degrees()
    d_max = int(degree.max()) if g.n else 0
    c_min = d.c_min
    palette = {c: color_of(c, c_min, d.c_max) for c in range(c_min, d.c_max + 1)}
    edges = sample_edges(g, cfg.edge_fraction,
                         np.random.default_rng([cfg.seed, _EDGE_STREAM]))
    return Layout(
        positions=positions,
        rho=rho,
        alpha=alpha,
        owner=owner,
        coreness=coreness,
        degree=degree,
        colors=[palette[c] for c in coreness.tolist()],
        sizes=np.asarray(size_of(degree, d_max, cfg.size_min, cfg.size_max), dtype=float),
        edges=edges,
        centers=centers,
        units=units,
        c_max=d.c_max,
        config=cfg,
    )


def format_coordinates(layout: Layout) -> str:
    """One ``id x y coreness degree color`` line per vertex, 6 decimals."""
    rows = zip(layout.positions.tolist(), layout.coreness.tolist(),
               layout.degree.tolist(), layout.colors)
    return "".join(f"{i} {x:.6f} {y:.6f} {c} {deg} {col}\n"
                   for i, ((x, y), c, deg, col) in enumerate(rows))


class KCoreLayout(BaseEstimator):
    """Two-dimensional k-core drawing of a graph.

    Each vertex lands on a ring whose radius grows as its coreness falls,
    nudged inward by the coreness of its neighbors. Connected pieces of a
    shell occupy separate angular sectors, and cores that break into
    several components are drawn as smaller offset sub-circles.

    Parameters
    ----------
    epsilon : float, default=0.18
        Ring thickness; each shell spans a band of relative width ``epsilon``.
    delta : float, default=1.3
        Spacing between the centers of sibling components.
    gamma : float, default=1.5
        Overall diameter of each component's drawing.
    edge_fraction : float, default=0.1
        Share of edges kept for drawing.
    seed : int, default=0
        Governs every random draw (sector jitter, disk placement,
        component orientation, edge sampling).
    size_min, size_max : float
        Glyph radius for the least and most connected vertex.

    Attributes
    ----------
    layout_ : Layout
    embedding_ : ndarray of shape (n_vertices, 2)
    coreness_ : ndarray of shape (n_vertices,)
    tree_ : ComponentTree
    """

    def __init__(self, epsilon=0.18, delta=1.3, gamma=1.5, edge_fraction=0.1, seed=0,
                 size_min=1.0, size_max=6.0):
        self.epsilon = epsilon
        self.delta = delta
        self.gamma = gamma
        self.edge_fraction = edge_fraction
        self.seed = seed
        self.size_min = size_min
        self.size_max = size_max

    def _config(self) -> LayoutConfig:
        return LayoutConfig(**self.get_params())

    def fit(self, X, y=None):
        cfg = self._config()
        g = check_graph(X)
        d = core_decomposition(g)
        ct = shell_clusters(g, d)
        tree = component_tree(g, d)
        self.layout_ = build_layout(g, d, ct, tree, cfg)
        self.decomposition_ = d
        self.clusters_ = ct
        self.tree_ = tree
        self.coreness_ = d.coreness
        self.embedding_ = self.layout_.positions
        self.n_vertices_in_ = g.n
        return self

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).embedding_
