"""Maximally recoverable locally repairable codes over sum-rank outer codes."""

try:
    from ._srlrc import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _srlrc import *  # noqa: F401,F403  (in-tree build)
