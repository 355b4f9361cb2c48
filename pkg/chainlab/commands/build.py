"""``chainlab build``: write graph documents for one or more specs."""

import argparse

from chainlab.commands.common import emit
from chainlab.services.graph_io import dump_graphs, resolve_graphs


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("build", help="emit a graph file")
    parser.add_argument("graphs", nargs="+",
                        help="half:K, k=K:u=a,b:v=c,d, a JSON document or a graph file")
    parser.set_defaults(func=run)
    return parser


def run(args: argparse.Namespace) -> int:
    graphs = [g for arg in args.graphs for g in resolve_graphs(arg)]
    emit(dump_graphs(graphs), args)
    return 0
