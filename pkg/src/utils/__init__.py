from .settings import configure_logging, get_int_setting, get_setting
from .rng import RandomStreams

__all__ = ["configure_logging", "get_int_setting", "get_setting", "RandomStreams"]
