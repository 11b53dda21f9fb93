"""Two-mode squeezed-state quadrature analytics, the incompleteness
criterion, and the forward-backward amplification trajectory simulator."""

from ._eprwmr import *  # noqa: F401,F403
from ._eprwmr import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
