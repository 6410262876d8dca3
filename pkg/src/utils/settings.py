import logging
import os

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_setting(key: str, default=None):
    """Get a process setting from the environment (.env is loaded by app.py)."""
    value = os.getenv(key)
    if value is None or value == "":
        return default
    return value


def get_int_setting(key: str, default: int) -> int:
    """Get an integer setting, falling back to the default on bad values."""
    value = get_setting(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        logging.getLogger(__name__).warning("Ignoring non-integer %s=%r", key, value)
        return default


def configure_logging(level: str | None = None) -> None:
    """Install a single stream handler on the root logger."""
    level_name = (level or get_setting("MANET_LOG_LEVEL", "INFO")).upper()
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.INFO))
