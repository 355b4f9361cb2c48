"""``chainlab verify``: exhaustive theorem and property sweeps."""

import argparse

from chainlab.commands.common import emit, settings_from
from chainlab.services.report_writer import render
from chainlab.services.verify_service import TARGETS, run_target


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("verify", help="run a verification sweep")
    parser.add_argument("target", choices=TARGETS)
    parser.add_argument("--max-n", type=int, default=None, help="vertex budget for spec sweeps")
    parser.add_argument("--max-k", type=int, default=None, help="largest half graph index")
    parser.set_defaults(func=run)
    return parser


def run(args: argparse.Namespace) -> int:
    for name in ("max_n", "max_k"):
        value = getattr(args, name)
        if value is not None and value < (2 if name == "max_n" else 1):
            raise ValueError(f"--{name.replace('_', '-')} is too small: {value}")
    settings = settings_from(args)
    report = run_target(
        args.target,
        max_n=args.max_n,
        max_k=args.max_k,
        mode=settings.mode,
        tol=settings.tolerances(),
        workers=settings.workers,
    )
    emit(render(report, settings.output_format), args)
    return 0 if report.passed else 1
