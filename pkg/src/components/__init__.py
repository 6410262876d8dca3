from .run_command import EXIT_INVALID, EXIT_IO, EXIT_OK, cmd_run, resolve_config
from .sweep_command import cmd_sweep, run_all, sweep_configs

__all__ = [
    "EXIT_INVALID",
    "EXIT_IO",
    "EXIT_OK",
    "cmd_run",
    "resolve_config",
    "cmd_sweep",
    "run_all",
    "sweep_configs",
]
