"""Command-line entry point: ``lowkey analyze | batch | generate | render``.

Options can also come from a TOML file given with ``--config``; keys use the
long flag names with underscores (``con_mode = "weighted"``). Flags given on
the command line win over the file.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from . import __version__
from .centrality import CON_MODES, PR_ORIENTATIONS, ConvergenceError
from .ingest import FORMATS, ParseError, detect_format, load, serialize
from .lkl import analyze, batch_lkl, detect_lkl, slope_graph
from .ranking_model import RankingModelParams, copy_node_analysis, generate, in_degree_distribution
from .render import render_degree_histogram_svg, render_histogram_svg, render_slope_svg
from .reporting import SCHEMA_VERSION, dumps, report_from_dict, report_table_csv, report_to_dict, verdict_to_dict

log = logging.getLogger("lowkey")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BAD_CONFIG = 2
EXIT_PARSE = 3
EXIT_CONVERGENCE = 4


class ConfigError(ValueError):
    pass


@dataclass
class AnalysisConfig:
    input: Path | None = None
    format: str | None = None
    direction: str = "column_dominates_row"
    con_mode: str = "binarized"
    damping: float = 0.85
    tol: float = 1e-10
    max_iter: int = 200
    pr_weighted: bool = False
    pr_orientation: str = "reversed"
    thresholds: list[float] = field(default_factory=lambda: [0.5])
    movement_threshold: int = 5
    top_k: int | None = None
    out_dir: Path = Path("out")
    svg: bool = True

    def validate(self) -> None:
        for t in self.thresholds:
            if not 0 <= t <= 1:
                raise ConfigError(f"threshold must lie in [0, 1], got {t}")
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError("top-k must be >= 1")
        if self.movement_threshold < 1:
            raise ConfigError("movement threshold must be >= 1")
        if not 0 < self.damping < 1:
            raise ConfigError("damping must lie in (0, 1)")
        if self.tol <= 0 or self.max_iter < 1:
            raise ConfigError("tol must be > 0 and max-iter >= 1")
        if self.con_mode not in CON_MODES:
            raise ConfigError(f"unknown CON mode {self.con_mode!r}")
        if self.pr_orientation not in PR_ORIENTATIONS:
            raise ConfigError(f"unknown PageRank orientation {self.pr_orientation!r}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")

    def params(self) -> dict:
        return {
            "format": self.format,
            "direction": self.direction,
            "con_mode": self.con_mode,
            "damping": self.damping,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "pr_weighted": self.pr_weighted,
            "pr_orientation": self.pr_orientation,
            "thresholds": list(self.thresholds),
            "movement_threshold": self.movement_threshold,
            "top_k": self.top_k,
        }


def _config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    cfg = AnalysisConfig(
        input=Path(args.input) if getattr(args, "input", None) else None,
        format=args.format,
        direction=args.direction.replace("-", "_"),
        con_mode=args.con_mode,
        damping=args.damping,
        tol=args.tol,
        max_iter=args.max_iter,
        pr_weighted=args.pr_weighted,
        pr_orientation=args.pr_orientation,
        thresholds=list(args.threshold) if args.threshold else [0.5],
        movement_threshold=args.movement_threshold,
        top_k=args.top_k,
        out_dir=Path(args.out_dir),
        svg=not args.no_svg,
    )
    cfg.validate()
    return cfg


def _sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def analyze_file(path: Path, cfg: AnalysisConfig):
    fmt = cfg.format or detect_format(path)
    g = load(path, fmt, cfg.direction)
    if g.n == 0:
        raise ParseError("input contains no nodes", source=str(path))
    report = analyze(
        g,
        con_mode=cfg.con_mode,
        damping=cfg.damping,
        tol=cfg.tol,
        max_iter=cfg.max_iter,
        pr_weighted=cfg.pr_weighted,
        pr_orientation=cfg.pr_orientation,
    )
    return fmt, g, report


# -- subcommands ---------------------------------------------------------


def cmd_analyze(cfg: AnalysisConfig) -> dict:
    """Analyze one network and write ``<stem>.report.json``, ``<stem>.table.csv`` and SVGs."""
    path = cfg.input
    fmt, g, report = analyze_file(path, cfg)
    verdicts = [detect_lkl(report, t) for t in cfg.thresholds]
    params = cfg.params()
    params["format"] = fmt
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "input": {"path": str(path), "sha256": _sha256(path), "nodes": g.n, "edges": g.num_edges()},
        "parameters": params,
        "verdict": verdict_to_dict(verdicts[0]),
        "verdicts": [verdict_to_dict(v) for v in verdicts],
        "report": report_to_dict(report),
    }
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(path).name.split(".")[0]
    (out / f"{stem}.report.json").write_text(dumps(payload), encoding="utf-8")
    (out / f"{stem}.table.csv").write_text(report_table_csv(report, cfg.top_k), encoding="utf-8")
    if cfg.svg:
        spec = slope_graph(report, cfg.movement_threshold)
        (out / f"{stem}.slope.svg").write_text(render_slope_svg(spec, cfg.top_k, title=stem), encoding="utf-8")
        (out / f"{stem}.histogram.svg").write_text(render_histogram_svg(report, cfg.top_k, title=stem), encoding="utf-8")
    v = verdicts[0]
    leaders = ", ".join(n.label for n in v.leaders)
    log.info("%s: leader(s) %s, epsilon %.4f, LKL %s at threshold %g", stem, leaders, v.epsilon_max,
             "present" if v.exists else "absent", v.threshold)
    return payload


def _batch_one(args):
    path, cfg = args
    try:
        _, g, report = analyze_file(path, cfg)
    except (ParseError, ConvergenceError, UnicodeDecodeError, ValueError) as exc:
        return path, None, str(exc)
    return path, report, None


def cmd_batch(directory: Path, cfg: AnalysisConfig, workers: int = 1) -> dict:
    """Analyze every file in ``directory``; unparseable files are recorded and skipped."""
    directory = Path(directory)
    files = sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))
    if not files:
        raise ConfigError(f"no input files in {directory}")
    jobs = [(p, cfg) for p in files]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_batch_one, jobs))
    else:
        results = [_batch_one(j) for j in jobs]

    ok = [(p, r) for p, r, err in results if r is not None]
    skipped = [(p, err) for p, r, err in results if r is None]
    for p, err in skipped:
        log.warning("skipping %s: %s", p.name, err)
    if not ok:
        raise ConfigError(f"none of the {len(files)} files in {directory} could be analyzed")

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = [r for _, r in ok]
    summaries = {t: batch_lkl(reports, t) for t in cfg.thresholds}

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["network", "nodes", "leaders", "epsilon_max"] + [f"lkl@{t:g}" for t in cfg.thresholds])
    for k, (p, r) in enumerate(ok):
        v0 = summaries[cfg.thresholds[0]].verdicts[k]
        w.writerow(
            [p.name, len(r), ";".join(n.label for n in v0.leaders), repr(v0.epsilon_max)]
            + [int(summaries[t].verdicts[k].exists) for t in cfg.thresholds]
        )
    (out / "batch_verdicts.csv").write_text(buf.getvalue(), encoding="utf-8")

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["threshold", "networks", "count_with_lkl", "fraction"])
    for t in cfg.thresholds:
        s = summaries[t]
        w.writerow([f"{t:g}", s.total, s.count_with_lkl, repr(s.fraction)])
    (out / "batch_summary.csv").write_text(buf.getvalue(), encoding="utf-8")

    payload = {
        "schema_version": SCHEMA_VERSION,
        "directory": str(directory),
        "parameters": cfg.params(),
        "aggregate": [
            {"threshold": t, "networks": summaries[t].total, "count_with_lkl": summaries[t].count_with_lkl,
             "fraction": summaries[t].fraction}
            for t in cfg.thresholds
        ],
        "skipped": [{"file": p.name, "error": err} for p, err in skipped],
    }
    (out / "batch_summary.json").write_text(dumps(payload), encoding="utf-8")
    for row in payload["aggregate"]:
        log.info("threshold %g: %d/%d networks with an LKL (%.2f%%)", row["threshold"], row["count_with_lkl"],
                 row["networks"], 100 * row["fraction"])
    return payload


def cmd_generate(n: int, alpha: float, seed: int, runs: int, out_dir: Path,
                 threshold: float = 0.5, pr_orientation: str = "original") -> dict:
    """Generate ``runs`` ranking-model graphs with seeds ``seed, seed+1, ...`` and analyze each."""
    if runs < 1:
        raise ConfigError("runs must be >= 1")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pooled: dict[int, int] = {}
    per_run = []
    for k in range(runs):
        params = RankingModelParams(n, alpha, seed + k)
        gg = generate(params)
        res = copy_node_analysis(gg, threshold, pr_orientation=pr_orientation)
        stem = f"run_{k:04d}"
        (out / f"{stem}.edges.csv").write_text(serialize(gg.graph), encoding="utf-8")
        side = gg.sidecar()
        side["analysis"] = {
            "pr_orientation": pr_orientation,
            "threshold": threshold,
            "copy_con": res.copy_con,
            "template_con": res.template_con,
            "epsilon_of_copy": res.epsilon_of_copy,
            "copy_is_lkl": res.copy_is_lkl,
            "leaders": [{"index": x.index, "label": x.label} for x in res.leaders],
            "epsilon_max": res.epsilon_max,
        }
        (out / f"{stem}.json").write_text(dumps(side), encoding="utf-8")
        for d, c in in_degree_distribution(gg.graph).histogram.items():
            pooled[d] = pooled.get(d, 0) + c
        per_run.append({"seed": params.seed, "copy_node": gg.copy_node.label,
                        "epsilon_of_copy": res.epsilon_of_copy, "copy_is_lkl": res.copy_is_lkl})
        if k == 0:
            h = in_degree_distribution(gg.graph).histogram
            (out / f"{stem}.indegree.svg").write_text(
                render_degree_histogram_svg(h, title=f"in-degree, n={n}, seed={params.seed}"), encoding="utf-8")

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["in_degree", "count"])
    for d in sorted(pooled):
        w.writerow([d, pooled[d]])
    (out / "indegree_histogram.csv").write_text(buf.getvalue(), encoding="utf-8")

    hits = sum(r["copy_is_lkl"] for r in per_run)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "parameters": {"n": n, "alpha": alpha, "seed": seed, "runs": runs, "threshold": threshold,
                       "pr_orientation": pr_orientation, "rng": "numpy.random.PCG64"},
        "copy_is_lkl_count": hits,
        "copy_is_lkl_fraction": hits / runs,
        "runs": per_run,
    }
    (out / "generate_summary.json").write_text(dumps(summary), encoding="utf-8")
    log.info("copy node is the LKL in %d/%d runs", hits, runs)
    return summary


def cmd_render(report_path: Path, out_dir: Path, movement_threshold: int = 5, top_k: int | None = None) -> list[Path]:
    """Re-render the SVG figures from a saved JSON report."""
    payload = json.loads(Path(report_path).read_text(encoding="utf-8"))
    report = report_from_dict(payload["report"])
    stem = Path(report_path).name.split(".")[0]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec = slope_graph(report, movement_threshold)
    paths = [out / f"{stem}.slope.svg", out / f"{stem}.histogram.svg"]
    paths[0].write_text(render_slope_svg(spec, top_k, title=stem), encoding="utf-8")
    paths[1].write_text(render_histogram_svg(report, top_k, title=stem), encoding="utf-8")
    return paths


# -- argument parsing ------------------------------------------------------


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default=None, help="input format (default: detect)")
    p.add_argument("--direction", choices=("column-dominates-row", "row-dominates-column",
                                           "column_dominates_row", "row_dominates_column"),
                   default="column-dominates-row", help="dominance matrix arrow convention")
    p.add_argument("--con-mode", choices=CON_MODES, default="binarized")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--pr-weighted", action="store_true", help="weight-proportional PageRank transitions")
    p.add_argument("--pr-orientation", choices=PR_ORIENTATIONS, default="reversed",
                   help="run PageRank on the reversed-edge network (default) or the graph as given")
    p.add_argument("--threshold", type=float, action="append", help="epsilon threshold (repeatable, default 0.5)")
    p.add_argument("--movement-threshold", type=int, default=5, help="slope graph highlight threshold")
    p.add_argument("--top-k", type=int, default=None, help="truncate display tables and figures")
    p.add_argument("--out-dir", default="out")
    p.add_argument("--no-svg", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lowkey", description="Low-key leader detection in adversarial networks.")
    parser.add_argument("--config", type=Path, help="TOML file with option defaults")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one network")
    a.add_argument("input")
    _add_analysis_flags(a)

    b = sub.add_parser("batch", help="analyze every file in a directory")
    b.add_argument("input", metavar="DIR")
    _add_analysis_flags(b)
    b.add_argument("--workers", type=int, default=1)

    g = sub.add_parser("generate", help="sample directed ranking model graphs")
    g.add_argument("--n", type=int, default=200)
    g.add_argument("--alpha", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--runs", type=int, default=1)
    g.add_argument("--threshold", type=float, default=0.5)
    g.add_argument("--pr-orientation", choices=PR_ORIENTATIONS, default="original")
    g.add_argument("--out-dir", default="out")

    r = sub.add_parser("render", help="render SVG figures from a JSON report")
    r.add_argument("input", metavar="REPORT_JSON")
    r.add_argument("--movement-threshold", type=int, default=5)
    r.add_argument("--top-k", type=int, default=None)
    r.add_argument("--out-dir", default="out")
    return parser


def _load_config(path: Path) -> dict:
    try:
        data = tomli.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    flat = {}
    for k, v in data.items():
        if isinstance(v, dict):
            flat.update(v)
        else:
            flat[k] = v
    flat = {k.replace("-", "_"): v for k, v in flat.items()}
    if "threshold" in flat and not isinstance(flat["threshold"], list):
        flat["threshold"] = [flat["threshold"]]
    return flat


def parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        defaults = _load_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = sorted(set(defaults) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        if args.command == "generate" and isinstance(defaults.get("threshold"), list):
            defaults["threshold"] = defaults["threshold"][0]
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("LKL_LOG", "INFO").upper(), format="%(levelname)s %(message)s")
    try:
        args = parse_args(argv)
        if args.command == "analyze":
            cmd_analyze(_config_from_args(args))
        elif args.command == "batch":
            cmd_batch(Path(args.input), _config_from_args(args), workers=args.workers)
        elif args.command == "generate":
            RankingModelParams(args.n, args.alpha, args.seed)
            cmd_generate(args.n, args.alpha, args.seed, args.runs, Path(args.out_dir),
                         args.threshold, args.pr_orientation)
        elif args.command == "render":
            cmd_render(Path(args.input), Path(args.out_dir), args.movement_threshold, args.top_k)
    except ParseError as exc:
        log.error("parse error: %s", exc)
        return EXIT_PARSE
    except ConvergenceError as exc:
        log.error("%s; retry with a looser --tol or larger --max-iter", exc)
        return EXIT_CONVERGENCE
    except (ConfigError, ValueError) as exc:
        log.error("bad configuration: %s", exc)
        return EXIT_BAD_CONFIG
    except FileNotFoundError as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
