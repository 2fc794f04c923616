"""
qpair Command-Line Entry Point
=================================
compute: five information quantities of a (state, channel) pair
verify: one identity / inequality check
sample: seeded randomized campaign
generate: write random or named state/channel documents

Exit codes: 0 pass, 1 check failed, 2 parse error, 3 validation error,
4 configuration error.
"""

import argparse
import logging
import sys

from pydantic import ValidationError as SchemaError

from qpair.commands import compute, generate, sample, verify
from qpair.config import LOG_LEVEL
from qpair.input_validator import ConfigError, ParseError, ValidationError

logger = logging.getLogger("qpair")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CONFIG = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpair",
        description="Purification of (state, channel) pairs: entropies, information quantities and inequality checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for module in (compute, verify, sample, generate):
        module.register(sub)
    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING),
        format="%(asctime)s │ %(levelname)-7s │ %(name)s │ %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    logger.info("▶ %s", args.command)

    try:
        return args.handler(args)
    except ParseError as e:
        print(f"error: parse error in {e.path} at {e.location}: {e.message}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as e:
        print(f"error: {e.invariant} on '{e.field}': {e.message}", file=sys.stderr)
        return EXIT_CONFIG
    except SchemaError as e:
        print(f"error: invalid configuration: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as e:
        print(f"error: {e.invariant} on '{e.field}': {e.message}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
