"""Perfect-matching nonlocal games: exact values, constructions and certificates."""

from ._core import *  # noqa: F401,F403
from ._core import InputError, SizeLimitError  # noqa: F401

__version__ = "0.1.0"
