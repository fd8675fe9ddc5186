"""Plan, search and analyse Rubik's Cube solutions."""


class RcPlanError(Exception):
    """Base class for the errors rcplan raises."""
