"""Core logging configuration for the application"""
import logging
import logging.handlers
import sys
import json
from datetime import datetime, timezone

from core.config import settings

class SafeJSONFormatter(logging.Formatter):
    """JSON formatter that keeps ``extra=`` fields and handles reserved keywords"""

    RESERVED_ATTRS = {
        'args', 'asctime', 'created', 'exc_info', 'exc_text', 'filename',
        'funcName', 'levelname', 'levelno', 'lineno', 'module', 'msecs',
        'msg', 'name', 'pathname', 'process', 'processName', 'relativeCreated',
        'stack_info', 'thread', 'threadName', 'taskName', 'message'
    }

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON"""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage()
        }

        # Fields passed through extra= land on the record itself
        for key, value in record.__dict__.items():
            if key in self.RESERVED_ATTRS or key.startswith("_"):
                continue
            log_data[key if key not in log_data else f"extra_{key}"] = value

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, default=str)

def setup_logging(level: str = settings.LOG_LEVEL) -> None:
    """Configure application logging"""
    json_formatter = SafeJSONFormatter()

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if settings.DEBUG else level)

    # Clear any existing handlers
    root_logger.handlers = []

    # stdout carries result tables, so the console handler writes to stderr
    handlers = {"console": logging.StreamHandler(sys.stderr)}
    handlers["console"].setLevel(logging.DEBUG if settings.DEBUG else level)

    if settings.LOG_DIR is not None:
        log_dir = settings.LOG_DIR
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers["error"] = logging.handlers.RotatingFileHandler(
            log_dir / "error.log",
            maxBytes=10_485_760,  # 10MB
            backupCount=5
        )
        handlers["error"].setLevel(logging.ERROR)
        handlers["app"] = logging.handlers.RotatingFileHandler(
            log_dir / "app.log",
            maxBytes=10_485_760,
            backupCount=5
        )
        handlers["app"].setLevel(logging.INFO)
        if settings.DEBUG:
            handlers["debug"] = logging.handlers.RotatingFileHandler(
                log_dir / "debug.log",
                maxBytes=10_485_760,
                backupCount=3
            )
            handlers["debug"].setLevel(logging.DEBUG)

    for handler in handlers.values():
        handler.setFormatter(json_formatter)
        root_logger.addHandler(handler)

    # Third-party loggers
    for logger_name in ("matplotlib", "numexpr"):
        logging.getLogger(logger_name).setLevel(logging.WARNING)

# Initialize logging when module is imported
setup_logging()

def get_logger(name: str) -> logging.Logger:
    """Get a logger instance"""
    return logging.getLogger(name)
