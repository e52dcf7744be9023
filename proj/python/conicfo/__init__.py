"""First-order conic solvers with projection accounting."""

from ._conicfo import *  # noqa: F401,F403
from ._conicfo import __doc__  # noqa: F401
