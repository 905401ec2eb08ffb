"""
Logging setup: one rich handler on stderr for the whole rtz namespace
"""
import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = 'rtz'

_configured = False


def configure_logging(level='WARNING'):
    """Install the stderr handler once; later calls only change the level"""
    global _configured
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(level)
    if not _configured:
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(logging.Formatter('%(name)s: %(message)s'))
        root.addHandler(handler)
        root.propagate = False
        _configured = True
    return root


def get_logger(name):
    if not name.startswith(ROOT_LOGGER):
        name = f'{ROOT_LOGGER}.{name}'
    return logging.getLogger(name)
