import sys
from pathlib import Path
from typing import Optional, TextIO, Union

from loguru import logger


def add_logging_sink(sink: Union[TextIO, Path], verbose: int, colorize: bool = False, serialize: bool = False):
    """Adds a logging sink to the global process logger.

    Parameters
    ----------
    sink
        Either a file path or system file descriptor like ``sys.stderr``.
    verbose
        Verbosity of the logger.
    colorize
        Whether to use the colorization options from :mod:`loguru`.
    serialize
        Whether the logs should be converted to JSON before they're dumped
        to the logging sink.

    """
    message_format = ('<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <green>{elapsed}</green> | '
                      '<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>')
    if verbose == 0:
        level = 'WARNING'
    elif verbose == 1:
        level = 'INFO'
    else:
        level = 'DEBUG'
    logger.add(sink, colorize=colorize, level=level, format=message_format, serialize=serialize)


def configure_logging_to_terminal(verbose: int, log_file: Optional[str] = None):
    """Sets up logging to ``sys.stderr``; stdout is reserved for the report stream.

    Parameters
    ----------
    verbose
        Verbosity of the logger.
    log_file
        If given, every record at the chosen level is also written to this
        file, one JSON object per line.

    """
    logger.remove()  # Clear default configuration
    add_logging_sink(sys.stderr, verbose, colorize=True)
    if log_file is not None:
        add_logging_sink(Path(log_file), verbose, serialize=True)
