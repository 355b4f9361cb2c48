"""Options and helpers shared by every subcommand."""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from chainlab.config import Mode, OutputFormat, Settings, load_settings
from chainlab.services.exact_arith import OMEGA, QuadraticNumber

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class LambdaSyntaxError(ValueError):
    """``--lambda`` value that is neither ω shorthand, a rational nor a decimal."""


def parse_lambda(text: str) -> QuadraticNumber | float:
    """``1``, ``-1``, ``w``/``-w`` (ω), ``p/q`` are exact; decimals are floats."""
    value = text.strip()
    if value in ("w", "ω", "+w", "+ω"):
        return OMEGA
    if value in ("-w", "-ω"):
        return -OMEGA
    if _RATIONAL.match(value):
        try:
            return QuadraticNumber(Fraction(value))
        except ZeroDivisionError as exc:
            raise LambdaSyntaxError(f"--lambda: zero denominator in {text!r}") from exc
    if _DECIMAL.match(value):
        return float(value)
    raise LambdaSyntaxError(f"--lambda: cannot parse {text!r}; use 1, -1, w, -w, p/q or a decimal")


def add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", type=Mode, choices=list(Mode), default=None,
                        help="exact, float or hybrid (default: hybrid)")
    parser.add_argument("--tol", type=float, default=None,
                        help="zero-component tolerance for unit eigenvectors (default 1e-7)")
    parser.add_argument("--group-tol", type=float, default=None,
                        help="eigenvalues closer than this are equal (default 1e-7)")
    parser.add_argument("--workers", type=int, default=None, help="worker processes (default 1)")
    parser.add_argument("--format", dest="output_format", type=OutputFormat,
                        choices=list(OutputFormat), default=None, help="json, csv or text")
    parser.add_argument("--output", type=Path, default=None, help="write the report here")
    parser.add_argument("--config", type=Path, default=None, help="TOML settings file")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for per-case detail")


def settings_from(args: argparse.Namespace) -> Settings:
    return load_settings(
        args.config,
        mode=args.mode,
        zero_tol=args.tol,
        group_tol=args.group_tol,
        workers=args.workers,
        output_format=args.output_format,
    )


def emit(text: str, args: argparse.Namespace) -> None:
    if args.output is None:
        sys.stdout.write(text)
        return
    args.output.write_text(text, encoding="utf-8")
