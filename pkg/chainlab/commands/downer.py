"""``chainlab downer``: downer classification of every vertex for one λ."""

import argparse

from chainlab.commands.common import emit, parse_lambda, settings_from
from chainlab.config import Mode
from chainlab.services.downer_service import downer_classify, is_exact_value
from chainlab.services.graph_io import resolve_graphs
from chainlab.services.report_writer import render


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("downer", help="classify vertices as downer for λ")
    parser.add_argument("graph", help="graph file or inline spec")
    parser.add_argument("--lambda", dest="lam", required=True,
                        help="eigenvalue: 1, -1, w, -w, p/q or a decimal")
    parser.set_defaults(func=run)
    return parser


def run(args: argparse.Namespace) -> int:
    lam = parse_lambda(args.lam)
    settings = settings_from(args)
    if args.mode is None:
        # ω shorthand and rationals go exact, decimals float.
        mode = Mode.EXACT if is_exact_value(lam) else Mode.FLOAT
    else:
        mode = settings.mode
    if mode is Mode.EXACT and not is_exact_value(lam):
        raise ValueError(f"--mode exact needs an exact --lambda, got {args.lam!r}")
    tol = settings.tolerances()
    reports = [downer_classify(g, lam, mode, tol) for g in resolve_graphs(args.graph)]
    emit(render(reports[0] if len(reports) == 1 else reports, settings.output_format), args)
    return 0
