"""JSON and CSV forms of centrality reports and verdicts."""

from __future__ import annotations

import csv
import io
import json

from .graph import NodeId
from .lkl import CentralityReport, LklVerdict, NodeRecord

SCHEMA_VERSION = 1


def _node(n: NodeId) -> dict:
    return {"index": n.index, "label": n.label}


def verdict_to_dict(v: LklVerdict) -> dict:
    return {
        "leaders": [_node(n) for n in v.leaders],
        "epsilon_max": v.epsilon_max,
        "threshold": v.threshold,
        "exists": v.exists,
    }


def report_to_dict(report: CentralityReport) -> dict:
    return {
        "con_mode": report.con_mode,
        "pagerank": dict(report.pagerank),
        "con_degenerate": report.con_degenerate,
        "pr_degenerate": report.pr_degenerate,
        "nodes": [
            {
                "index": r.node.index,
                "label": r.node.label,
                "con": r.con,
                "pr": r.pr,
                "con_norm": r.con_norm,
                "pr_norm": r.pr_norm,
                "epsilon": r.epsilon,
            }
            for r in report.records
        ],
    }


def report_from_dict(d: dict) -> CentralityReport:
    records = [
        NodeRecord(NodeId(x["index"], x["label"]), x["con"], x["pr"], x["con_norm"], x["pr_norm"], x["epsilon"])
        for x in d["nodes"]
    ]
    return CentralityReport(records, d["con_mode"], dict(d["pagerank"]), d["con_degenerate"], d["pr_degenerate"])


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_table_csv(report: CentralityReport, top_k: int | None = None) -> str:
    """Per-node table (rank by epsilon, CON, PageRank, normalized scores, epsilon)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "node", "con", "pr", "con_norm", "pr_norm", "epsilon"])
    records = report.records[:top_k] if top_k else report.records
    for k, r in enumerate(records, start=1):
        w.writerow([k, r.node.label, r.con, repr(r.pr), repr(r.con_norm), repr(r.pr_norm), repr(r.epsilon)])
    return buf.getvalue()
