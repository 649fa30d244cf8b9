from pathlib import Path
from dotenv import load_dotenv
import os

from utils.errors import ConfigError

DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_THREADS = 1


def load_environment():
    """Load environment variables from the .env file at the repository root, if any."""
    env_path = Path(__file__).parent.parent.parent / '.env'
    if env_path.exists():
        load_dotenv(env_path)


def log_level() -> str:
    """Logging level name from REGGESCAT_LOG_LEVEL."""
    load_environment()
    return os.getenv("REGGESCAT_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


def thread_count(override: int = None) -> int:
    """
    Number of worker threads for sweeps.

    Args:
        override: Value given on the command line; wins over the environment

    Returns:
        Positive thread count
    """
    if override is not None:
        threads = override
    else:
        load_environment()
        raw = os.getenv("REGGESCAT_THREADS", str(DEFAULT_THREADS))
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigError(f"REGGESCAT_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise ConfigError(f"Thread count must be positive, got {threads}")
    return threads
