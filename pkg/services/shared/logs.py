"""
Bracket-tagged diagnostics, e.g. "[INFO] orbit search visited 42 nodes".
Everything goes to stderr so stdout stays reserved for records.
"""

import logging
import sys

from services.shared.config import config

_FORMAT = "[%(levelname)s] %(message)s"
_ROOT = "services"
_HANDLER = "services-stderr"


def configure(level: str = None) -> None:
    root = logging.getLogger(_ROOT)
    ours = [h for h in root.handlers if h.get_name() == _HANDLER]
    # a handler bound to a replaced stderr is rebuilt, never duplicated
    current = [h for h in ours if getattr(h, "stream", None) is sys.stderr]
    for handler in ours:
        if handler not in current[:1]:
            root.removeHandler(handler)
    if not current:
        handler = logging.StreamHandler(sys.stderr)
        handler.set_name(_HANDLER)
        handler.setFormatter(logging.Formatter(_FORMAT))
        root.addHandler(handler)
    root.propagate = False
    root.setLevel((level or config.LOG_LEVEL).upper())


def get_logger(name: str) -> logging.Logger:
    if not any(h.get_name() == _HANDLER for h in logging.getLogger(_ROOT).handlers):
        configure()
    return logging.getLogger(name)
