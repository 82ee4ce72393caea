"""Travelling-wave solver for bistable reaction-diffusion problems."""

from ._fkpp import (
    AsymptoticExponents,
    CStarResult,
    FkppError,
    ManufacturedProblem,
    ProblemSpec,
    Trajectory,
    WaveProfile,
    alpha_bistable,
    build_problem,
    classify_interfaces,
    cubic_bistable,
    double_well,
    manufactured_problem,
    reconstruct,
    shoot,
    solve_cstar,
    tabulated,
)

__all__ = [
    "AsymptoticExponents",
    "CStarResult",
    "FkppError",
    "ManufacturedProblem",
    "ProblemSpec",
    "Trajectory",
    "WaveProfile",
    "alpha_bistable",
    "build_problem",
    "classify_interfaces",
    "cubic_bistable",
    "double_well",
    "manufactured_problem",
    "reconstruct",
    "shoot",
    "solve_cstar",
    "tabulated",
]
