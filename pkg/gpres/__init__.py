"""gpres - graded group presentations, condition R, and equations over the resulting groups."""

__version__ = "0.1.0"
