"""
Main Application Entry Point
symtest - optimal type-II error of unitary symmetry tests
"""

import logging
import sys

from dotenv import load_dotenv

# .env overrides must be in the environment before config is built
load_dotenv()

from config.config import config  # noqa: E402
from src.cli import cli  # noqa: E402


def setup_logging() -> None:
    """Log to stderr (stdout carries command output) and optionally to a file"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.monitoring.log_file:
        handlers.append(logging.FileHandler(config.monitoring.log_file))
    logging.basicConfig(
        level=getattr(logging, config.monitoring.log_level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def main() -> None:
    setup_logging()
    cli(prog_name="symtest")


if __name__ == "__main__":
    main()
