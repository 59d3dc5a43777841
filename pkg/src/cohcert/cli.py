"""Command line interface for the cohcert package."""

import argparse
import json
import sys
from typing import List, Optional

from loguru import logger

from cohcert.core.config import TASKS, RunConfig
from cohcert.core.registry import get_available_tasks
from cohcert.core.runner import TaskRunner
from cohcert.errors import CohcertError, ConfigError, InternalError, UnknownTaskError

EXIT_OK = 0
EXIT_MODULE_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_INTERRUPTED = 130


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser.

    Returns:
        Configured ArgumentParser instance.
    """
    parser = argparse.ArgumentParser(
        prog="cohcert",
        description="Certify lower bounds on the coherence of an unknown quantum state",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s bound-l1 --config run.json          # Analytical l1 bound
  %(prog)s bound-re --config run.json --method dual --lambda-range -50 50
  %(prog)s bound-re --config run.json --method sweep --resolution 32x64
  %(prog)s oracle --config run.json --with-oracle
  %(prog)s figures --out ./results            # CSV series for figures 4-7
  %(prog)s --list-tasks                       # List available tasks
        """,
    )

    parser.add_argument("task", nargs="?", choices=TASKS, help="Task to run")
    parser.add_argument("--config", help="Path to a JSON run configuration")
    parser.add_argument(
        "--out", default="results", help="Directory for the report and CSV files (default: results)"
    )
    parser.add_argument("--seed", type=int, help="Seed for sampling and solver restarts")
    parser.add_argument("--shots", type=int, help="Shots per preparation (default: exact)")
    parser.add_argument("--method", help="Bound method (analytical|convex|dual|sweep)")
    parser.add_argument("--resolution", help="Region-sweep grid as RxA, e.g. 64x128")
    parser.add_argument(
        "--lambda-range", nargs=2, type=float, metavar=("LO", "HI"), help="Dual search range"
    )
    parser.add_argument("--tolerance", type=float, help="Dual refinement tolerance in λ")
    parser.add_argument(
        "--with-oracle", action="store_const", const=True, help="Add a brute-force comparison"
    )
    parser.add_argument(
        "--with-timing", action="store_true", help="Include wall-clock timing in the report"
    )
    parser.add_argument("--debug", action="store_true", help="Log solver diagnostics")
    parser.add_argument(
        "--list-tasks", action="store_true", help="List available tasks and exit"
    )

    return parser


def list_tasks():
    """List all available tasks with the first line of their description."""
    tasks = get_available_tasks()

    print("Available tasks:")
    for name, task_class in tasks.items():
        summary = (task_class.__doc__ or "").strip().splitlines()
        print(f"  {name:<10} {summary[0] if summary else ''}")

    print(f"\nTotal: {len(tasks)} tasks")


def configure_logging(debug: bool = False):
    """Route loguru output to stderr so stdout stays free for JSON errors.

    Args:
        debug: Log solver diagnostics at DEBUG level when set.
    """
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if debug else "INFO")


def build_config(parsed_args) -> RunConfig:
    """Config from ``--config`` (or defaults) with CLI flags applied on top."""
    if parsed_args.config:
        try:
            config = RunConfig.load(parsed_args.config)
        except OSError as e:
            raise ConfigError(f"Cannot read config '{parsed_args.config}': {e}") from None
    else:
        config = RunConfig(task=parsed_args.task)
    if parsed_args.task and parsed_args.task != config.task:
        config = RunConfig.parse(json.dumps({**config.to_dict(), "task": parsed_args.task}))
    return config.with_overrides(
        seed=parsed_args.seed,
        shots=parsed_args.shots,
        method=parsed_args.method,
        resolution=parsed_args.resolution,
        lambda_range=list(parsed_args.lambda_range) if parsed_args.lambda_range else None,
        tolerance=parsed_args.tolerance,
        with_oracle=parsed_args.with_oracle,
    )


def emit_error(error: CohcertError):
    """Print the machine-readable error object on stdout.

    Args:
        error: Error to report; its code, message, stage and details are emitted.
    """
    print(json.dumps(error.to_dict(), indent=2, default=str))


def main(args: Optional[List[str]] = None):
    """Main CLI entry point.

    Args:
        args: Command line arguments. If None, uses sys.argv.
    """
    parser = create_parser()
    parsed_args = parser.parse_args(args)
    configure_logging(parsed_args.debug)

    if parsed_args.list_tasks:
        list_tasks()
        return

    if not parsed_args.task and not parsed_args.config:
        parser.error("a task or --config is required")

    try:
        config = build_config(parsed_args)
        runner = TaskRunner(output_dir=parsed_args.out, with_timing=parsed_args.with_timing)
        output_file = runner.run_and_save(config)
        logger.info(f"Run complete. Report saved to: {output_file}")

    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        sys.exit(EXIT_INTERRUPTED)
    except (ConfigError, UnknownTaskError) as e:
        e.stage = e.stage or "config"
        logger.error(f"Configuration error: {e.message}")
        emit_error(e)
        sys.exit(EXIT_CONFIG_ERROR)
    except CohcertError as e:
        logger.error(f"Error during {e.stage or 'run'}: {e.message}")
        emit_error(e)
        sys.exit(EXIT_MODULE_ERROR)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        emit_error(InternalError(f"{type(e).__name__}: {e}"))
        sys.exit(EXIT_MODULE_ERROR)


if __name__ == "__main__":
    main()
