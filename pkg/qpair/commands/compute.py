"""
Compute Command
================
qpair compute STATE CHANNEL: InfoReport of one (state, channel) pair.
"""

import logging

from qpair.information import info_report
from qpair.input_validator import ConfigError
from qpair.rendering import render_info_report
from qpair.serialization import load_channel, load_state, write_text

logger = logging.getLogger(__name__)


def register(sub) -> None:
    p = sub.add_parser("compute", help="entropies and information quantities of a pair")
    p.add_argument("state", help="state document path, '-' for stdin")
    p.add_argument("channel", nargs="?", help="channel document path or name[:params][@dims]")
    p.add_argument("--channel", dest="channel_opt", metavar="SPEC", help="named channel, e.g. depolarizing:0.5")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(handler=run)


def run(args) -> int:
    source = args.channel_opt or args.channel
    if source is None:
        raise ConfigError("channel", "a channel path or --channel SPEC is required")
    rho = load_state(args.state)
    phi = load_channel(source)
    report = info_report(rho, phi)
    logger.info("✅ Computed report for %r through %r", rho, phi)
    write_text(render_info_report(report, args.output), args.out)
    return 0
