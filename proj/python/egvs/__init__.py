"""Roadside LiDAR placement evaluation: entropy-weighted visibility scoring."""

from ._egvs import *  # noqa: F401,F403
from ._egvs import __version__  # noqa: F401
