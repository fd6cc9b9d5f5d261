"""Two-level system under projective measurement and temporal Bell inequalities."""

from ._tbell import *  # noqa: F401,F403
from ._tbell import __version__  # noqa: F401
