"""Curvature of translation and homothetical surfaces in Euclidean and
Lorentz-Minkowski space."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
