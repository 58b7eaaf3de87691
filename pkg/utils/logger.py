import logging

import coloredlogs

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def configure_logging(level="INFO"):
    """
    Install coloured stderr logging for the package loggers.
    Safe to call more than once; the last level wins.
    """
    for name in ("utils", "routers", "Database", "main"):
        coloredlogs.install(
            level=level,
            logger=logging.getLogger(name),
            fmt=LOG_FORMAT,
        )
