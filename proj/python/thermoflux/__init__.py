"""Heat currents and rectification of a two-bath quantum oscillator."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, analytic  # noqa: F401
