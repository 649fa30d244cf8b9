import logging

from utils.env import log_level

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_configured = False


def get_logger(name: str) -> logging.Logger:
    """Module logger; the package root handler is installed on first use."""
    global _configured
    if not _configured:
        root = logging.getLogger("reggescat")
        if not root.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter(_FORMAT))
            root.addHandler(handler)
        root.setLevel(log_level())
        root.propagate = False
        _configured = True
    return logging.getLogger(f"reggescat.{name}")
