"""
Periodic traveling wave generator - command line entry point.

    python main.py constants --preset fig1
    python main.py solve --preset fig3 --out runs/fig3
    python main.py verify --profile runs/fig1/profile.csv --preset fig1
    python main.py sweep --config-dir configs --out runs

Exit codes: 0 success, 2 configuration error, 3 not converged, 1 crash.
"""

import argparse
import logging
import logging.config
import sys
from pathlib import Path
from typing import Optional, Sequence

from config import (
    EXIT_CONFIG_ERROR,
    LOG_BACKUP_COUNT,
    LOG_DATE_FORMAT,
    LOG_DIR,
    LOG_FILE,
    LOG_FORMAT,
    LOG_ROTATE_WHEN,
)
from core.commands import cmd_constants, cmd_solve, cmd_sweep, cmd_verify
from core.errors import ConfigurationError
from core.run_config import RunConfig
from core.runs import preset_mapping, preset_names

logger = logging.getLogger(__name__)


# =============================================================================
# LOGGING SETUP
# =============================================================================

def logging_settings(log_file: Optional[Path], level: int) -> dict:
    """dictConfig mapping: stderr console always, daily-rotated file when given."""
    handlers: dict = {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
            "level": level if level <= logging.DEBUG else logging.WARNING,
        },
    }
    if log_file is not None:
        handlers["run_file"] = {
            "class": "logging.handlers.TimedRotatingFileHandler",
            "filename": str(log_file),
            "when": LOG_ROTATE_WHEN,
            "backupCount": LOG_BACKUP_COUNT,
            "encoding": "utf-8",
            "formatter": "plain",
            "level": level,
        }
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {"plain": {"format": LOG_FORMAT, "datefmt": LOG_DATE_FORMAT}},
        "handlers": handlers,
        "root": {"level": level, "handlers": list(handlers)},
    }


def configure_logging(log_dir: str = LOG_DIR, level: int = logging.INFO) -> Optional[Path]:
    """
    Warnings to stderr (everything with -v) and the full log to
    <log_dir>/wavegen.log. Without a writable log directory only the
    console handler is installed and None is returned.
    """
    log_file: Optional[Path] = Path(log_dir) / LOG_FILE
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logging.config.dictConfig(logging_settings(log_file, level))
    except (OSError, ValueError) as exc:
        log_file = None
        logging.config.dictConfig(logging_settings(None, level))
        logger.warning("No log file in %s (%s); logging to stderr only", log_dir, exc)
    return log_file


# =============================================================================
# ARGUMENTS
# =============================================================================

def _add_config_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="YAML run configuration")
    source.add_argument("--preset", choices=preset_names(), help="bundled run preset")
    parser.add_argument("--branch", type=int, help="constant branch index (sorted by |C|)")
    parser.add_argument("--mpe", choices=("on", "off"), help="override MPE acceleration")
    parser.add_argument("--out", type=Path, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptw", description="Periodic traveling waves by the extended Petviashvili method."
    )
    parser.add_argument("--log-dir", default=LOG_DIR, help="directory for wavegen.log")
    parser.add_argument("-v", "--verbose", action="store_true", help="log every iteration")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_config_options(sub.add_parser("constants", help="list real constant branches"))
    _add_config_options(sub.add_parser("solve", help="compute a profile and write artifacts"))

    verify = sub.add_parser("verify", help="re-check a stored profile")
    verify.add_argument("--profile", type=Path, required=True, help="profile CSV")
    _add_config_options(verify)

    sweep = sub.add_parser("sweep", help="solve every *.yaml in a directory")
    sweep.add_argument("--config-dir", type=Path, required=True)
    sweep.add_argument("--out", type=Path, help="root output directory")
    sweep.add_argument("--workers", type=int, help="process count (else environment or CPU count)")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    if args.preset:
        config = RunConfig.from_mapping(preset_mapping(args.preset))
    else:
        config = RunConfig.from_file(args.config)
    mpe = None if args.mpe is None else args.mpe == "on"
    return config.with_overrides(
        branch=args.branch, mpe=mpe, output_dir=str(args.out) if args.out else None
    )


def dispatch(args: argparse.Namespace) -> int:
    """Run the parsed command; returns the exit code."""
    try:
        if args.command == "sweep":
            return cmd_sweep(args.config_dir, args.out, args.workers)
        config = load_config(args)
        if args.command == "constants":
            return cmd_constants(config)
        if args.command == "solve":
            return cmd_solve(config)
        return cmd_verify(args.profile, config)
    except (ConfigurationError, ValueError) as e:
        logger.error("Configuration error: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse and dispatch without touching logging handlers."""
    return dispatch(build_parser().parse_args(argv))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_dir, logging.DEBUG if args.verbose else logging.INFO)
    return dispatch(args)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass
    except Exception:
        logger.exception("Unhandled fatal error")
        sys.exit(1)
