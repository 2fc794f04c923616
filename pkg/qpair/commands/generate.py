"""
Generate Command
=================
qpair generate state|channel|named: write seeded random or named documents.
"""

import logging

from qpair.channel_catalog import parse_channel_shorthand, random_channel, random_state
from qpair.serialization import channel_document, dumps, state_document, write_text

logger = logging.getLogger(__name__)


def register(sub) -> None:
    p = sub.add_parser("generate", help="write a random state, random channel or named channel document")
    kinds = p.add_subparsers(dest="kind", required=True)

    s = kinds.add_parser("state")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)

    c = kinds.add_parser("channel")
    c.add_argument("--din", type=int, required=True)
    c.add_argument("--dout", type=int, required=True)
    c.add_argument("--kraus", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)

    n = kinds.add_parser("named")
    n.add_argument("spec", help="name[:params][@dims], e.g. depolarizing:1")

    for k in (s, c, n):
        k.add_argument("--out", default="-")
        k.set_defaults(handler=run)


def run(args) -> int:
    if args.kind == "state":
        doc = state_document(random_state(args.dim, args.seed))
    elif args.kind == "channel":
        doc = channel_document(random_channel(args.din, args.dout, args.kraus, args.seed))
    else:
        doc = channel_document(parse_channel_shorthand(args.spec))
    write_text(dumps(doc), args.out)
    logger.info("✅ Wrote %s document to %s", args.kind, args.out)
    return 0
