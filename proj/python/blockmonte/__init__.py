"""Monte Carlo estimators of mathematical constants from block-game mechanics."""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, DegenerateSample, estimate, estimate_from_counts  # noqa: F401
