"""chainlab command-line entry point.

Exit status: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

import argparse
import logging
import sys

from pydantic import ValidationError

from chainlab import __version__
from chainlab.commands import build, downer, gap_check, search, spectrum, verify
from chainlab.commands.common import add_common_options

logger = logging.getLogger("chainlab")

COMMANDS = (build, spectrum, downer, verify, search, gap_check)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainlab",
        description="Spectral toolkit for chain graphs: exact spectra, downer vertices, "
        "eigenvalue-free interval.",
    )
    parser.add_argument("--version", action="version", version=f"chainlab {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        add_common_options(command.register(subparsers))
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s [%(name)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def _first_error(exc: ValidationError) -> str:
    first = exc.errors()[0]
    field = ".".join(str(part) for part in first["loc"])
    return f"{field}: {first['msg']}" if field else first["msg"]


def _join_lambda(argv: list[str]) -> list[str]:
    """Rewrite ``--lambda -w`` as ``--lambda=-w``.

    argparse reads a dash-prefixed token that is not a plain number as an
    option, but ``--lambda`` always takes the next token as its value.
    """
    out: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token == "--lambda":
            value = next(tokens, None)
            if value is None:
                out.append(token)
            elif value.startswith("-") and not value.startswith("--"):
                out.append(f"--lambda={value}")
            else:
                out.extend((token, value))
        else:
            out.append(token)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_lambda(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)
    logger.debug("command %s", args.command)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"chainlab: error: {_first_error(exc)}", file=sys.stderr)
    except (ValueError, IndexError) as exc:
        # GraphFileError and LambdaSyntaxError are ValueErrors.
        print(f"chainlab: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
