"""``chainlab gap-check``: no eigenvalue in (0, 1/2) or its mirror."""

import argparse

from chainlab.commands.common import emit, settings_from
from chainlab.services.downer_service import eigenvalue_gap_check
from chainlab.services.graph_io import resolve_graphs
from chainlab.services.report_writer import render
from chainlab.services.spectra import graph_spectrum


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("gap-check", help="eigenvalue-free interval check")
    parser.add_argument("graph", help="graph file or inline spec")
    parser.set_defaults(func=run)
    return parser


def run(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    tol = settings.tolerances()
    reports = [
        eigenvalue_gap_check(graph_spectrum(g, tol), g.display_name, tol)
        for g in resolve_graphs(args.graph)
    ]
    emit(render(reports[0] if len(reports) == 1 else reports, settings.output_format), args)
    return 0 if all(r.ok for r in reports) else 1
