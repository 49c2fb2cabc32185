"""Matrix-profile semantic segmentation anomaly detection."""

from ._mpseg import *  # noqa: F401,F403
from ._mpseg import MpsegError, __version__  # noqa: F401
