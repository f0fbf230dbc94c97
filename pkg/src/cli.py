"""Command implementations behind src/main.py; each returns a process exit code."""

import json
import math
import os
import sys

from bandit import choose, model_for_round
from benchmarks import run_suite
from reporting import ReportGenerator
from storage import FileManager
from utils.config_loader import load_suggest_config, load_suite_spec
from utils.errors import ArgumentError, ConfigError, HistoryParseError, ReportInputError
from utils.helpers import format_row
from utils.logger import setup_logger

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def cmd_bench(args) -> int:
    try:
        spec = load_suite_spec(args.config)
    except ConfigError as e:
        logger.error(f"❌ Config error: {e}")
        return EXIT_USAGE

    jobs = args.jobs or os.cpu_count() or 1
    logger.info(f"📊 Benchmark {spec.family.value}: {', '.join(spec.labels)}")
    try:
        stats = run_suite(spec, jobs=jobs)
        if not stats.runs:
            logger.error("❌ Every run failed; nothing to write")
            return EXIT_FAILURE
        ReportGenerator().write_bench_outputs(stats, FileManager(args.out).ensure_output_dir())
    except Exception as e:
        logger.error(f"❌ Benchmark failed: {e}")
        logger.exception("Detailed error traceback:")
        return EXIT_FAILURE

    if stats.n_failed:
        logger.error(f"❌ {stats.n_failed} run(s) failed; outputs cover the remaining runs")
        return EXIT_FAILURE
    logger.info(f"✅ Benchmark complete: {len(stats.runs)} run(s) written to {args.out}")
    return EXIT_OK


def cmd_suggest(args) -> int:
    """Print the next point for the given history; the history file is the whole state"""
    try:
        config = load_suggest_config(args.config)
        history = FileManager().read_history(args.history, config.grid.dim)
        if not 0 <= config.warm_start <= len(history):
            raise ConfigError(f"warm_start={config.warm_start} but the history has {len(history)} row(s)")
    except (ConfigError, HistoryParseError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    t = len(history) - config.warm_start + 1
    try:
        run_config = config.run_config(max_rounds=t, warm_start_points=history.points[:config.warm_start])
        model = model_for_round(run_config, history, t)
        selection, _, _ = choose(run_config, model, history, t)
    except ArgumentError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"❌ Suggestion failed: {e}")
        logger.exception("Detailed error traceback:")
        return EXIT_FAILURE

    print(format_row(config.grid.points[selection.index]))
    diagnostics = {k: _json_safe(v) for k, v in selection.diagnostics(config.acquisition).items()}
    diagnostics['t'] = t
    print(json.dumps(diagnostics, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_report(args) -> int:
    generator = ReportGenerator()
    try:
        frame = generator.load_rounds(args.rounds)
    except ReportInputError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    out_dir = args.out or os.path.join(os.path.dirname(os.path.abspath(args.rounds)), 'curves')
    try:
        summary, curves = generator.summarize_rounds(frame, generator.load_label_order(args.rounds))
        generator.write_report(summary, curves, out_dir)
    except Exception as e:
        logger.error(f"❌ Report failed: {e}")
        logger.exception("Detailed error traceback:")
        return EXIT_FAILURE

    print(generator.render_table(summary))
    return EXIT_OK
