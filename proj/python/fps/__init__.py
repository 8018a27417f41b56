"""Photon-pair generation in birefringent fibers (bindings to the C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import FpsError, StepCountTooSmall  # noqa: F401
