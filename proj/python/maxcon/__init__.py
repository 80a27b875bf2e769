"""Consensus maximization toolkit.

Thin re-export of the compiled extension; see `help(maxcon._maxcon)` for
the full operation list.
"""

from ._maxcon import *  # noqa: F401,F403
from ._maxcon import __doc__  # noqa: F401
