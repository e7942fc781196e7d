"""Resilient binary linear classification under training-data attacks."""

from _rlc import *  # noqa: F401,F403
