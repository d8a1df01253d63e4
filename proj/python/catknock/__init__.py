"""Exact conditional-independence knockoffs for exchangeable categorical
covariates: priors, exact probabilities, samplers, robustness bounds, and the
knockoff filter."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
