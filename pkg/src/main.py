#!/usr/bin/env python3
"""
Main entry point for the GP bandit optimization toolkit
"""

import os
import sys
import argparse

# Add the src directory and the repository root to Python path
current_dir = os.path.dirname(os.path.abspath(__file__))
root_dir = os.path.dirname(current_dir)
for path in (current_dir, root_dir):
    if path not in sys.path:
        sys.path.insert(0, path)

from cli import cmd_bench, cmd_report, cmd_suggest
from utils.logger import setup_logger

logger = setup_logger(__name__)

EPILOG = """
Examples:
  python src/main.py bench --config suite.json --out results/   # Run a benchmark suite
  python src/main.py suggest --config study.json --history h.csv  # Next point to evaluate
  python src/main.py report --rounds results/rounds.csv           # Summarize a bench run

Suite config keys (defaults):
  family        gp_sample_1d | gp_sample_2d | gp_sample_3d | hartmann3 | branin (gp_sample_1d)
  n_functions   30 (1-D), 10 (2-D), 1 (3-D and fixed test functions)
  max_rounds    150 (1-D), 1000 (2-D), 150 (3-D and fixed test functions)
  acquisitions  ["est_numeric", "est_laplace", "ucb", "ei", "pi", "random"]
  resolution    600 (1-D), 50 (2-D), 15 (3-D) points per axis
  seed 0, noise_std 0.001, warm_start 1, refit null, lipschitz null, delta 0.01
  prior         {"lengthscale": 0.1, "signal_std": 1.0}

Suggest config keys (defaults):
  grid          {"axes": [{"lo": 0, "hi": 1, "n": 100}]} or {"points": [...], "bounds": [...]}
  model         {"kernel": {"family": "matern", "nu": 2.5, "lengthscale": 0.1, "signal_std": 1.0},
                 "mean": {"kind": "zero"}, "noise_var": 0.0}
  acquisition   "est_numeric"; seed 0; warm_start 0; lipschitz null; delta 0.01
  refit         null or {"every": 5, "lengthscales": [...], "signal_stds": [...]}

GPEST_SEED overrides the config seed. Exit codes: 0 success, 1 runtime failure, 2 usage/config/parse error.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Gaussian-process bandit optimization with max-value estimation (EST), UCB, EI and PI',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    commands = parser.add_subparsers(dest='command', required=True)

    bench = commands.add_parser('bench', help='Run a benchmark suite and write rounds.csv, summary.csv, suite.json')
    bench.add_argument('--config', required=True, help='Suite config (JSON)')
    bench.add_argument('--out', required=True, help='Output directory')
    bench.add_argument('--jobs', type=int, default=None, help='Worker processes (default: available cores)')
    bench.set_defaults(handler=cmd_bench)

    suggest = commands.add_parser('suggest', help='Print the next point to evaluate given a history CSV')
    suggest.add_argument('--config', required=True, help='Study config (JSON)')
    suggest.add_argument('--history', required=True, help='CSV with header x_1,...,x_d,y')
    suggest.set_defaults(handler=cmd_suggest)

    report = commands.add_parser('report', help='Summarize a rounds.csv and write regret curves')
    report.add_argument('--rounds', required=True, help='rounds.csv produced by bench')
    report.add_argument('--out', default=None, help='Curve output directory (default: curves/ beside rounds.csv)')
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv=None) -> int:
    """Parse arguments and dispatch to the selected command"""
    args = build_parser().parse_args(argv)
    if getattr(args, 'jobs', None) is not None and args.jobs < 1:
        logger.error("❌ --jobs must be at least 1")
        return 2
    try:
        return args.handler(args)
    except KeyboardInterrupt:
        logger.info("⏹️ Interrupted by user")
        return 1
    except Exception as e:
        logger.error(f"❌ Application error: {str(e)}")
        logger.exception("Detailed error traceback:")
        return 1


if __name__ == "__main__":
    sys.exit(main())
