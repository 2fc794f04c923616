"""
Sample Command
===============
qpair sample --trials N --seed S ...: seeded randomized campaign.
Exit 0 when every trial of every check passed.
"""

import logging

from qpair.config import DEFAULT_SEED, DEFAULT_TRIALS, INEQUALITY_TOL, IDENTITY_TOL, CAMPAIGN_WORKERS
from qpair.inequality_lab import CHECKS, CampaignConfig, run_campaign
from qpair.rendering import render_campaign
from qpair.serialization import write_text

logger = logging.getLogger(__name__)


def register(sub) -> None:
    p = sub.add_parser("sample", help="run a seeded randomized campaign")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--din-min", type=int, default=2)
    p.add_argument("--din-max", type=int, default=4)
    p.add_argument("--dout-min", type=int, default=2)
    p.add_argument("--dout-max", type=int, default=4)
    p.add_argument("--kraus-max", type=int, default=5)
    p.add_argument("--factor-dim-max", type=int, default=3)
    p.add_argument("--checks", default="dpi", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--tol", type=float, default=INEQUALITY_TOL)
    p.add_argument("--identity-tol", type=float, default=IDENTITY_TOL)
    p.add_argument("--workers", type=int, default=CAMPAIGN_WORKERS)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=run)


def run(args) -> int:
    config = CampaignConfig(
        trials=args.trials,
        seed=args.seed,
        din_min=args.din_min,
        din_max=args.din_max,
        dout_min=args.dout_min,
        dout_max=args.dout_max,
        kraus_max=args.kraus_max,
        factor_dim_max=args.factor_dim_max,
        tolerance=args.tol,
        identity_tolerance=args.identity_tol,
        workers=args.workers,
    )
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    report = run_campaign(config, checks)
    write_text(render_campaign(report, args.output), args.out)
    return 0 if report.all_passed else 1
