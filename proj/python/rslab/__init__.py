"""Convex-body inequality verification."""

try:
    from ._rslab import *  # packaged wheel layout
except ImportError:  # in-tree builds leave the module next to the build dir
    from _rslab import *  # noqa: F401,F403

__version__ = "0.1.0"
