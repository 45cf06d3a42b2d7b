"""Command-line entrypoint: ``python -m bifgraph.main {analyze,solve,render,all}``."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .config import apply_cli_overrides, get_section, load_config, logging_level, output_dir, solver_config
from .errors import BifgraphError
from .logging_config import configure_logging
from .pipeline import load_nonlinearity, run_all, run_analyze, run_render, run_solve

LOGGER = logging.getLogger(__name__)

EXIT_MISSING_FILE = 3

STAGES = {
    "analyze": run_analyze,
    "solve": run_solve,
    "render": run_render,
    "all": run_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bifgraph", description="Bifurcation analysis of PdEs on graphs")
    parser.add_argument("command", choices=sorted(STAGES))
    parser.add_argument("--config", default=None, help="YAML configuration (default: ./config.yaml)")
    parser.add_argument("--out", default=None, help="Output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--nonlinearity", default=None)
    parser.add_argument("--s-min", dest="s_min", type=float, default=None)
    parser.add_argument("--s-max", dest="s_max", type=float, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--format", choices=["svg", "txt", "dot"], default=None)
    return parser


def _log_startup_summary(cfg: Dict[str, Any], command: str) -> None:
    """Emit a startup block with the resolved graph, window and output settings."""

    graph = get_section(cfg, "graph")
    solver = solver_config(cfg)
    source = graph.get("edgelist") or graph.get("catalog") or "MISSING"
    lines = [
        "================= BIFGRAPH =================",
        f"Command: {command}",
        f"Experiment: {cfg.get('experiment_id') or 'n/a'}",
        f"Graph: {source}",
        f"Output: {output_dir(cfg)}",
        "Solver:",
        f"  Nonlinearity: {load_nonlinearity(cfg)!r}",
        f"  Window: s in [{solver.s_min}, {solver.s_max}], |u|_1 <= {solver.norm_max}",
        f"  Speed: c in [{solver.c_min}, {solver.c_max}], tau = {solver.tau}",
        f"  Epsilon: {solver.epsilon if solver.epsilon is not None else 'auto'}",
        f"  Seed: {solver.seed}",
        f"Render format: {get_section(cfg, 'render')['format']}",
        "============================================",
    ]
    LOGGER.info("\n".join(lines))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        cfg = load_config(args.config)
        apply_cli_overrides(cfg, args)
        configure_logging(logging_level(cfg))
        _log_startup_summary(cfg, args.command)
        STAGES[args.command](cfg)
    except FileNotFoundError as exc:
        LOGGER.error("%s", exc)
        return EXIT_MISSING_FILE
    except BifgraphError as exc:
        LOGGER.error("[%s] %s", type(exc).__name__, exc)
        return exc.exit_code
    except Exception:
        LOGGER.exception("Unexpected failure in %s", args.command)
        return 1
    LOGGER.info("%s finished", args.command)
    return 0


if __name__ == "__main__":
    sys.exit(main())
