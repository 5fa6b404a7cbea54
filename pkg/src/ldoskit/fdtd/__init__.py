"""3D Yee-grid FDTD engine with Drude ADE media and CPML boundaries."""

from .grid import GridSpec, build_geometry
from .engine import SourceSpec, YeeState, RunResult, simulate

__all__ = ["GridSpec", "build_geometry", "SourceSpec", "YeeState", "RunResult", "simulate"]
