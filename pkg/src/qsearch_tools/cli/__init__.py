from .commands import COMMANDS, resolve_schedule
from .config import RunConfig, resolve_config
from .main import main, parse_args

__all__ = ["COMMANDS", "RunConfig", "main", "parse_args", "resolve_config", "resolve_schedule"]
