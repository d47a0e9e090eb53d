"""k-core decomposition and concentric-shell drawings of large sparse graphs."""

from .decomposition import (ClusterTable, ComponentTree, CoreDecomposition,
                            KCoreDecomposition, component_tree, core_decomposition,
                            kcore_membership, shell_clusters)
from .generators import barabasi_albert, erdos_renyi
from .graph import (EdgeListParseError, Graph, check_graph, format_edge_list,
                    largest_connected_component, parse_edge_list)
from .layout import KCoreLayout, Layout, LayoutConfig, build_layout
from .metrics import Fingerprint, fingerprint
from .render import RenderOptions, render_svg

__all__ = [
    "ClusterTable", "ComponentTree", "CoreDecomposition", "EdgeListParseError",
    "Fingerprint", "Graph", "KCoreDecomposition", "KCoreLayout", "Layout",
    "LayoutConfig", "RenderOptions", "barabasi_albert", "build_layout",
    "check_graph", "component_tree", "core_decomposition", "erdos_renyi",
    "fingerprint", "format_edge_list", "kcore_membership",
    "largest_connected_component", "parse_edge_list", "render_svg",
    "shell_clusters",
]

__version__ = "0.1.0"
