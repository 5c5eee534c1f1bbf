"""Gross-Pitaevskii ground states and information-entropy analysis."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree builds put _core next to the package on sys.path
    from _core import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
