"""Rates, fluid limits and simulation for component structure in the configuration model."""

from ._ldcm import *  # noqa: F401,F403
from ._ldcm import Error, DomainError, FeasibilityError, PreconditionError, ParityError, StateError  # noqa: F401
