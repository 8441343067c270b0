"""
Namespaced logger factory.

Mirrors the per-component logger convention: every component asks for a
default logger under a shared namespace, and the environment decides how loud
it is and where records go.

Environment variables:
- HARMONIC_EIGENPOINTS_VERBOSE=1 - emit INFO records to stderr
- HARMONIC_EIGENPOINTS_LOG=/path/to/log - also append records to a file
"""

from __future__ import annotations

import logging
import os

NAMESPACE = "harmonic-eigenpoints"

VERBOSE_ENV = "HARMONIC_EIGENPOINTS_VERBOSE"
LOG_FILE_ENV = "HARMONIC_EIGENPOINTS_LOG"

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def create_default_logger(component: str, namespace: str = NAMESPACE) -> logging.Logger:
    """
    Create (or fetch) the logger for a component.

    Handlers are attached to the namespace root once, so repeated calls for
    different components share the same stderr/file handlers.
    """
    root = logging.getLogger(namespace)
    if not getattr(root, "_harmonic_configured", False):
        _configure(root)
    return root.getChild(component)


def _configure(root: logging.Logger) -> None:
    verbose = os.environ.get(VERBOSE_ENV, "") not in ("", "0")
    root.setLevel(logging.INFO if verbose else logging.WARNING)
    root.propagate = False

    formatter = logging.Formatter(LOG_FORMAT)

    stream = logging.StreamHandler()
    stream.setFormatter(formatter)
    root.addHandler(stream)

    log_path = os.environ.get(LOG_FILE_ENV)
    if log_path:
        file_handler = logging.FileHandler(log_path)
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.INFO)
        root.addHandler(file_handler)
        # the file always gets INFO, even when stderr stays quiet
        root.setLevel(logging.INFO)
        stream.setLevel(logging.INFO if verbose else logging.WARNING)

    root._harmonic_configured = True  # type: ignore[attr-defined]
