from jetvar.schemas.problem import ProblemOptions, ProblemSpec, load_problem
from jetvar.schemas.report import (
    CheckOut,
    CurrentEntry,
    GreenOut,
    PullbackOut,
    Report,
    ThetaEntry,
    build_report,
)

__all__ = [
    "CheckOut",
    "CurrentEntry",
    "GreenOut",
    "ProblemOptions",
    "ProblemSpec",
    "PullbackOut",
    "Report",
    "ThetaEntry",
    "build_report",
    "load_problem",
]
