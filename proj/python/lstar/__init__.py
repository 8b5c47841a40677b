"""Enclosures of star multi-polylogarithms, their integral forms, limits and inversion."""

from ._lstar import *  # noqa: F401,F403
from ._lstar import Enclosure, LStarError, __doc__  # noqa: F401
