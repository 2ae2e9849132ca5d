"""Primes in two Piatetski-Shapiro sets near a linear target."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
