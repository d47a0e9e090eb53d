"""Command-line entry point: ``kcorelayout {render,analyze,generate,fingerprint}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field

from .decomposition import component_tree, core_decomposition, format_analysis, shell_clusters
from .generators import GeneratorSpec
from .graph import EdgeListParseError, Graph, format_edge_list, format_label_map, parse_edge_list
from .layout import LayoutConfig, build_layout, format_coordinates
from .metrics import fingerprint
from .render import RenderOptions, render_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PARSE = 3

DEFAULT_SEED = 0

logger = logging.getLogger("kcorelayout")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    generator: GeneratorSpec | None = None
    out: str | None = None
    coords_out: str | None = None
    tree_out: str | None = None
    labels_out: str | None = None
    layout: LayoutConfig = field(default_factory=LayoutConfig)
    render: RenderOptions = field(default_factory=RenderOptions)
    degree_min: int = 100
    coreness_max: int = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_source(p: argparse.ArgumentParser, required_model: bool = False) -> None:
    if not required_model:
        p.add_argument("--input", help="edge-list file ('-' or omitted: stdin)")
    p.add_argument("--model", choices=("er", "ba"), required=required_model,
                   help="generate the graph instead of reading it")
    p.add_argument("--n", type=int, help="vertex count for --model")
    p.add_argument("--m", type=int, default=2, help="BA edges per new vertex")
    p.add_argument("--mean-degree", type=float, default=10.0, help="ER mean degree")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="output file (default: stdout)")


def _add_layout(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=0.18)
    p.add_argument("--delta", type=float, default=1.3)
    p.add_argument("--gamma", type=float, default=1.5)
    p.add_argument("--edge-fraction", type=float, default=0.1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kcorelayout", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("render", help="draw the graph as SVG")
    _add_source(p)
    _add_layout(p)
    p.add_argument("--coords-out", help="per-vertex coordinate dump")
    p.add_argument("--no-legend", action="store_true")
    p.add_argument("--canvas", type=int, default=800, help="drawing size in pixels")

    p = sub.add_parser("analyze", help="coreness, cluster and component per vertex")
    _add_source(p)
    p.add_argument("--tree-out", help="component tree as JSON")
    p.add_argument("--labels-out", help="id<TAB>token map")

    p = sub.add_parser("generate", help="emit a random graph as an edge list")
    _add_source(p, required_model=True)

    p = sub.add_parser("fingerprint", help="shell statistics as JSON")
    _add_source(p)
    _add_layout(p)
    p.add_argument("--degree-min", type=int, default=100)
    p.add_argument("--coreness-max", type=int, default=6)
    return parser


def parse_flags(argv) -> RunConfig:
    """Turn ``argv`` into a validated :class:`RunConfig`.

    Raises
    ------
    UsageError
        On unknown or conflicting flags and out-of-range values.
    """
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand, out=ns.out)
    cfg.input = getattr(ns, "input", None)
    if ns.model is not None:
        if cfg.input is not None:
            raise UsageError("--input and --model are mutually exclusive")
        if ns.n is None:
            raise UsageError("--model needs --n")
        try:
            cfg.generator = GeneratorSpec(ns.model, ns.n, mean_degree=ns.mean_degree,
                                          m=ns.m, seed=ns.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif ns.n is not None:
        raise UsageError("--n only applies together with --model")

    try:
        if hasattr(ns, "epsilon"):
            cfg.layout = LayoutConfig(epsilon=ns.epsilon, delta=ns.delta, gamma=ns.gamma,
                                      edge_fraction=ns.edge_fraction, seed=ns.seed)
        if ns.subcommand == "render":
            cfg.render = RenderOptions(canvas=ns.canvas, legend=not ns.no_legend)
            cfg.coords_out = ns.coords_out
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ns.subcommand == "analyze":
        cfg.tree_out = ns.tree_out
        cfg.labels_out = ns.labels_out
    if ns.subcommand == "fingerprint":
        if ns.degree_min < 0 or ns.coreness_max < 0:
            raise UsageError("hub thresholds must be non-negative")
        cfg.degree_min = ns.degree_min
        cfg.coreness_max = ns.coreness_max
    return cfg


def _load_graph(cfg: RunConfig) -> Graph:
    if cfg.generator is not None:
        return cfg.generator.generate()
    if cfg.input in (None, "-"):
        return parse_edge_list(sys.stdin)
    with open(cfg.input, encoding="utf-8", newline=None) as fh:
        return parse_edge_list(fh)


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(cfg: RunConfig) -> int:
    """Execute one pipeline; returns the process exit status."""
    try:
        g = _load_graph(cfg)
        if cfg.subcommand == "generate":
            _write(cfg.out, format_edge_list(g))
        elif cfg.subcommand == "analyze":
            d = core_decomposition(g)
            ct = shell_clusters(g, d)
            tree = component_tree(g, d)
            _write(cfg.out, format_analysis(d, ct, tree))
            if cfg.tree_out:
                _write(cfg.tree_out, tree.to_json())
            if cfg.labels_out:
                _write(cfg.labels_out, format_label_map(g))
        elif cfg.subcommand == "render":
            d = core_decomposition(g)
            layout = build_layout(g, d, shell_clusters(g, d), component_tree(g, d), cfg.layout)
            _write(cfg.out, render_svg(layout, cfg.render))
            if cfg.coords_out:
                _write(cfg.coords_out, format_coordinates(layout))
        elif cfg.subcommand == "fingerprint":
            fp = fingerprint(g, cfg.layout, cfg.degree_min, cfg.coreness_max)
            _write(cfg.out, fp.to_json())
    except EdgeListParseError as exc:
        print(f"kcorelayout: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"kcorelayout: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="kcorelayout: %(message)s")
    try:
        cfg = parse_flags(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"kcorelayout: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
