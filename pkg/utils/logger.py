import logging
from typing import Optional

from utils.config import CFG


def setup_logging(level: str = CFG.log_level, log_file: Optional[str] = CFG.log_file) -> None:
    """Configure the root logger once for command-line runs."""
    handlers = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=CFG.log_format,
        handlers=handlers,
        force=True,
    )
