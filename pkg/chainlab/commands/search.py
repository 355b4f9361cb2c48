"""``chainlab search``: vertices that are not downer for a nonzero eigenvalue."""

import argparse

from chainlab.commands.common import LambdaSyntaxError, emit, parse_lambda, settings_from
from chainlab.models.search import SearchJob
from chainlab.services.downer_service import is_exact_value
from chainlab.services.report_writer import render
from chainlab.services.search_service import find_non_downer


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("search", help="counterexample search over chain graphs")
    parser.add_argument("--max-n", type=int, required=True, help="vertex budget")
    parser.add_argument("--lambda", dest="lam", action="append", default=None,
                        help="only this exact eigenvalue (repeatable)")
    parser.add_argument("--half-graphs", action="store_true", help="only half graphs H(k)")
    parser.set_defaults(func=run)
    return parser


def run(args: argparse.Namespace) -> int:
    eigenvalue_filter = None
    if args.lam:
        eigenvalue_filter = []
        for text in args.lam:
            value = parse_lambda(text)
            if not is_exact_value(value):
                raise LambdaSyntaxError(f"--lambda filter must be exact, got {text!r}")
            eigenvalue_filter.append(value)
    settings = settings_from(args)
    job = SearchJob(
        max_n=args.max_n,
        mode=settings.mode,
        eigenvalue_filter=eigenvalue_filter,
        workers=settings.workers,
        half_graphs_only=args.half_graphs,
    )
    outcome = find_non_downer(job, settings.tolerances())
    emit(render(outcome, settings.output_format), args)
    return 0
