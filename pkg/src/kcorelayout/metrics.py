"""Numeric fingerprint of a graph's shell structure."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .decomposition import (ComponentTree, CoreDecomposition, component_tree,
                            core_decomposition, shell_clusters)
from .graph import Graph
from .layout import Layout, LayoutConfig, build_layout


@dataclass(frozen=True)
class ShellWidth:
    rho_min: float | None
    rho_max: float | None
    width: float


@dataclass(frozen=True)
class Fingerprint:
    n: int
    e: int
    c_max: int
    shell_sizes: dict[int, int]
    cluster_counts: dict[int, int]
    max_cluster_fraction: dict[int, float]
    shell_widths: dict[int, ShellWidth]
    degree_coreness_correlation: float | None
    hub_anomaly_count: int
    components_per_level: dict[int, int]

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("shell_sizes", "cluster_counts", "max_cluster_fraction",
                    "shell_widths", "components_per_level"):
            out[key] = {str(k): v for k, v in out[key].items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def degree_coreness_correlation(g: Graph, d: CoreDecomposition) -> float | None:
    """Pearson correlation of ``log(1 + degree)`` with coreness.

    Returns None when either variable is constant (or ``n < 2``).
    """
    if g.n < 2:
        return None
    x = np.log1p(g.degrees().astype(float))
    y = d.coreness.astype(float)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    return float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))


def hub_anomalies(g: Graph, d: CoreDecomposition, degree_min: int,
                  coreness_max: int) -> list[int]:
    """Vertices with degree above ``degree_min`` yet coreness below
    ``coreness_max``, highest degree first (ties by id)."""
    if degree_min < 0 or coreness_max < 0:
        raise ValueError("thresholds must be non-negative")
    deg = g.degrees()
    hits = np.flatnonzero((deg > degree_min) & (d.coreness < coreness_max))
    return hits[np.lexsort((hits, -deg[hits]))].tolist()


def shell_width_stats(layout: Layout, tree: ComponentTree) -> dict[int, ShellWidth]:
    """Radial extent of each shell inside the largest 1-core component.

    The top shell sits in a disk rather than a ring, so it is reported with
    zero width and no extremes.
    """
    top = tree.root.children
    if not top:
        return {}
    members = tree.nodes[top[0]].members
    out = {}
    core = layout.coreness[members]
    rho = layout.rho[members]
    for c in np.unique(core).tolist():
        if c == layout.c_max:
            out[c] = ShellWidth(None, None, 0.0)
            continue
        r = rho[core == c]
        lo, hi = float(r.min()), float(r.max())
        out[c] = ShellWidth(lo, hi, hi - lo)
    return out


def fingerprint(g: Graph, cfg: LayoutConfig | None = None, degree_min: int = 100,
                coreness_max: int = 6) -> Fingerprint:
    """Decompose, lay out and summarize ``g``.

    The hub thresholds are user choices; the defaults flag vertices of
    degree over 100 that still fall outside the 6-core.
    """
    cfg = cfg or LayoutConfig()
    d = core_decomposition(g)
    ct = shell_clusters(g, d)
    tree = component_tree(g, d)
    layout = build_layout(g, d, ct, tree, cfg)

    shell_sizes = {c: int(len(v)) for c, v in d.shells.items()}
    counts = {c: len(sizes) for c, sizes in ct.sizes.items()}
    biggest = {c: max(sizes) / sum(sizes) for c, sizes in ct.sizes.items()}
    per_level: dict[int, int] = {}
    for node in tree.nodes[1:]:
        per_level[node.level] = per_level.get(node.level, 0) + 1
    return Fingerprint(
        n=g.n,
        e=g.e,
        c_max=d.c_max,
        shell_sizes=shell_sizes,
        cluster_counts=counts,
        max_cluster_fraction=biggest,
        shell_widths=shell_width_stats(layout, tree),
        degree_coreness_correlation=degree_coreness_correlation(g, d),
        hub_anomaly_count=len(hub_anomalies(g, d, degree_min, coreness_max)),
        components_per_level=per_level,
    )
