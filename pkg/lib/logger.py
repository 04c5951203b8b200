import os
import sys
import logging
from pathlib import Path
from logging.handlers import RotatingFileHandler

def setup_logging(level: str = None):
    """Configure logging based on environment variables.

    Args:
        level: Optional level name overriding LOG_LEVEL
    """
    log_level = (level or os.getenv('LOG_LEVEL', 'INFO')).upper()
    log_path = os.getenv('LOG_PATH')

    formatter = logging.Formatter(
        '%(asctime)s.%(msecs)03d - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers = []

    if log_path:
        log_dir = os.path.dirname(log_path)
        if log_dir:
            Path(log_dir).mkdir(parents=True, exist_ok=True)

        # 10MB files, keep 5 backups
        handler = RotatingFileHandler(
            log_path,
            maxBytes=10*1024*1024,
            backupCount=5
        )
    else:
        # stdout carries JSON output, so logs never go there
        handler = logging.StreamHandler(sys.stderr)

    handler.setFormatter(formatter)
    root_logger.addHandler(handler)

# Module-level loggers, all inheriting from root
qcore_logger = logging.getLogger('qcore')
contfrac_logger = logging.getLogger('contfrac')
paths_logger = logging.getLogger('paths')
configs_logger = logging.getLogger('configs')
formulas_logger = logging.getLogger('formulas')
suite_logger = logging.getLogger('suite')
cli_logger = logging.getLogger('cli')

LOGGERS = [
    qcore_logger,
    contfrac_logger,
    paths_logger,
    configs_logger,
    formulas_logger,
    suite_logger,
    cli_logger
]

for logger in LOGGERS:
    logger.propagate = True
    logger.setLevel(logging.NOTSET)  # Use root logger's level
