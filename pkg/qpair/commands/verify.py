"""
Verify Command
===============
qpair verify dpi|subadd|marginal|exchange|product|ssa ...: one check.
Exit 0 when the check passes, 1 when it fails.
"""

import logging

from qpair.config import IDENTITY_TOL, INEQUALITY_TOL
from qpair.inequality_lab import (
    check_dpi,
    check_exchange_identity,
    check_marginal_consistency,
    check_product_marginals,
    check_strong_subadditivity,
    check_subadditivity,
)
from qpair.input_validator import BadParam
from qpair.rendering import render_check
from qpair.serialization import load_channel, load_state, write_text

logger = logging.getLogger(__name__)

# name -> (channel arity, default tolerance)
SUBCOMMANDS = {
    "dpi": (2, INEQUALITY_TOL),
    "subadd": (2, INEQUALITY_TOL),
    "marginal": (2, IDENTITY_TOL),
    "product": (2, IDENTITY_TOL),
    "exchange": (1, IDENTITY_TOL),
    "ssa": (0, INEQUALITY_TOL),
}


def register(sub) -> None:
    p = sub.add_parser("verify", help="run one identity or inequality check")
    checks = p.add_subparsers(dest="check", required=True)
    for name, (arity, default_tol) in SUBCOMMANDS.items():
        c = checks.add_parser(name)
        c.add_argument("state", help="state document path, '-' for stdin")
        for i in range(1, arity + 1):
            c.add_argument(f"channel{i}", help="channel document path or name[:params][@dims]")
        if name == "ssa":
            c.add_argument("--dims", required=True, help="three factor dims, e.g. 2,2,2")
        c.add_argument("--tol", type=float, default=default_tol)
        c.add_argument("--output", choices=("text", "json"), default="text")
        c.add_argument("--out", default="-")
        c.set_defaults(handler=run)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(d) for d in text.split(","))
    except ValueError:
        raise BadParam("dims", f"expected comma-separated integers, got '{text}'")


def run(args) -> int:
    rho = load_state(args.state)
    name = args.check

    if name == "ssa":
        result = check_strong_subadditivity(rho, _parse_dims(args.dims), tol=args.tol)
    elif name == "exchange":
        result = check_exchange_identity(rho, load_channel(args.channel1), tol=args.tol)
    else:
        phi1 = load_channel(args.channel1)
        phi2 = load_channel(args.channel2)
        runner = {
            "dpi": check_dpi,
            "subadd": check_subadditivity,
            "marginal": check_marginal_consistency,
            "product": check_product_marginals,
        }[name]
        result = runner(rho, phi1, phi2, tol=args.tol)

    if result.passed:
        logger.info("✅ %s passed (margin %.3e)", name, result.margin)
    else:
        logger.warning("❌ %s failed (margin %.3e)", name, result.margin)
    write_text(render_check(result, args.output), args.out)
    return 0 if result.passed else 1
