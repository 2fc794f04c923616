"""
Rendering Module
=================
Converts reports and check results into text or JSON for the CLI.
Output carries no timestamps or timings, so identical inputs render
byte-identically.
"""

import json

from qpair.information import InfoReport
from qpair.inequality_lab import CampaignReport, CheckResult

INFO_KEYS = ("h_in", "h_out", "h_exchange", "mutual", "coherent", "d_in", "d_out", "n_kraus")


def fmt(value: float) -> str:
    """12 significant digits."""
    return f"{value:.12g}"


def _round12(value):
    return float(fmt(value)) if isinstance(value, float) else value


def _as_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def render_info_report(report: InfoReport, output: str = "text") -> str:
    values = {k: getattr(report, k) for k in INFO_KEYS}
    if output == "json":
        return _as_json({k: _round12(v) for k, v in values.items()})
    lines = [f"{k}: {fmt(v) if isinstance(v, float) else v}" for k, v in values.items()]
    return "\n".join(lines) + "\n"


def render_check(result: CheckResult, output: str = "text") -> str:
    if output == "json":
        doc = result.model_dump(mode="json")
        for key in ("lhs", "rhs", "margin"):
            doc[key] = _round12(doc[key])
        doc["details"] = {k: _round12(v) for k, v in doc["details"].items()}
        return _as_json(doc)

    lines = [
        f"name: {result.name}",
        f"lhs: {fmt(result.lhs)}",
        f"rhs: {fmt(result.rhs)}",
        f"margin: {fmt(result.margin)}",
        f"passed: {str(result.passed).lower()}",
    ]
    for key, value in sorted(result.details.items()):
        lines.append(f"{key}: {fmt(value)}")
    return "\n".join(lines) + "\n"


def render_campaign(report: CampaignReport, output: str = "text") -> str:
    if output == "json":
        doc = report.model_dump(mode="json")
        doc["all_passed"] = report.all_passed
        return _as_json(doc)

    lines = []
    for c in report.checks:
        worst = fmt(c.worst_margin) if c.worst_margin is not None else "n/a"
        line = f"{c.name}: {c.passed}/{c.trials} passed, worst margin {worst}"
        if c.errors:
            line += f", {c.errors} error(s)"
        if c.failing_seeds:
            line += ", failing seeds " + ",".join(str(s) for s in c.failing_seeds)
        lines.append(line)
    return "\n".join(lines) + "\n"
