from __future__ import annotations

from ignifront.data.base import FrontBaseObject
from ignifront.data.curves import CandidatePair, CriticalData, CurveSamples
from ignifront.data.front import (
    FrontCertificate,
    FrontReport,
    FrontSolution,
    FrontTolerances,
    PreheatBranch,
)
from ignifront.data.params import ModelParams, ReactionSpec
from ignifront.data.phase import (
    PhasePortrait,
    SaddleData,
    SeparatrixOptions,
    SeparatrixTrajectory,
    SingularPoint,
)
from ignifront.data.simulation import (
    ConvergenceLevel,
    DriftReport,
    FrontSeries,
    SimulationConfig,
    SimulationResult,
    Snapshot,
)
from ignifront.data.types import (
    CurveKind,
    IntegratorMethod,
    ReactionKind,
    ScalarFunction,
    SingularPointKind,
)

__all__ = [
    "CandidatePair",
    "ConvergenceLevel",
    "CriticalData",
    "CurveKind",
    "CurveSamples",
    "DriftReport",
    "FrontBaseObject",
    "FrontCertificate",
    "FrontReport",
    "FrontSeries",
    "FrontSolution",
    "FrontTolerances",
    "IntegratorMethod",
    "ModelParams",
    "PhasePortrait",
    "PreheatBranch",
    "ReactionKind",
    "ReactionSpec",
    "SaddleData",
    "ScalarFunction",
    "SeparatrixOptions",
    "SeparatrixTrajectory",
    "SimulationConfig",
    "SimulationResult",
    "SingularPoint",
    "SingularPointKind",
    "Snapshot",
]
