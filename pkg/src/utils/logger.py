import logging
import os
from datetime import datetime

from config.settings import settings

def setup_logger(name: str, level=None) -> logging.Logger:
    """Setup logger with consistent configuration"""

    # Create logger
    logger = logging.getLogger(name)
    logger.setLevel(level or getattr(logging, settings.LOG_LEVEL, logging.INFO))

    # Avoid adding handlers multiple times
    if not logger.handlers:
        # Formatter
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        # File handler, one file per day
        if settings.LOG_TO_FILE:
            os.makedirs(settings.LOGS_DIR, exist_ok=True)
            log_file = os.path.join(settings.LOGS_DIR, f'gpest_{datetime.now().strftime("%Y%m%d")}.log')
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        # Console handler; stdout is reserved for command output
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
        logger.propagate = False

    return logger
