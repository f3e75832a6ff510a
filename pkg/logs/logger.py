"""Logging configuration built on loguru."""

import sys
from typing import Optional

from loguru import logger

from utils.constants import LOG_FORMAT_CONSOLE, LOG_FORMAT_FILE

# Records logged before setup_logging() still need extra[name] for the formats.
logger.configure(extra={"name": "covert"})


def setup_logging(settings=None, level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Install console and optional file sinks.

    Args:
        settings: Application settings; supplies log_level and log_file
        level: Explicit level, overrides settings
        log_file: Explicit file path, overrides settings
    """
    if settings is not None:
        level = level or settings.log_level
        log_file = log_file or settings.log_file
    level = (level or "WARNING").upper()

    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT_CONSOLE, colorize=True)
    if log_file:
        logger.add(
            log_file,
            level="DEBUG",
            format=LOG_FORMAT_FILE,
            rotation="10 MB",
            retention=3,
            enqueue=True,
        )
    logger.bind(name=__name__).debug(f"Logging configured at {level} (file: {log_file or 'none'})")


def get_logger(name: str):
    """Return a logger bound to a module name."""
    return logger.bind(name=name)


def log_sca_iteration(
    log,
    algorithm: str,
    iteration: int,
    surrogate_value: float,
    objective: float,
    rank_ratio: float,
    regime: str = "-",
    lipschitz: Optional[float] = None,
) -> None:
    """Log one accepted successive-approximation step."""
    lipschitz_value = float("nan") if lipschitz is None else lipschitz
    log.debug(
        f"{algorithm} it={iteration} surrogate={surrogate_value:.6g} "
        f"objective={objective:.6g} rank={rank_ratio:.6f} regime={regime} "
        f"L={lipschitz_value:.3g}"
    )


def log_srocr_step(log, delta: float, step: float, status: str, rank_ratio: float) -> None:
    """Log one rank-one relaxation step."""
    log.debug(f"SROCR delta={delta:.4f} step={step:.4g} status={status} rank={rank_ratio:.6f}")


def log_sweep_point(log, experiment: str, parameter: str, value: float, elapsed: float) -> None:
    """Log completion of one sweep point."""
    log.info(f"{experiment}: {parameter}={value:g} done in {elapsed:.2f}s")


def log_infeasible(log, context: str, reason: str) -> None:
    """Log an infeasible instance that is recorded rather than raised."""
    log.warning(f"{context}: infeasible ({reason})")
