"""Configuration management for akhsylv.

Loads environment variables for logging and provides the validated solver
settings shared by the library and the CLI.
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator

load_dotenv()

__all__ = ["Config", "SolverConfig"]


class Config:
    """Application settings; only logging is read from the environment."""

    # LOGGING
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: Optional[str] = os.getenv("LOG_FILE")

    # OUTPUT
    CSV_SCHEMA: str = "# akhsylv-csv v1"
    FLOAT_FORMAT: str = ".17g"

    # EXPERIMENTS
    DEFAULT_SEED: int = 1234


class SolverConfig(BaseModel):
    """Numerical settings for the Akhiezer solvers.

    Args:
    ----
        tolerance: Target accuracy ε of the stopping rule.
        envelope: Constant c of the coefficient envelope c·ρ^{-j}.
        rank_tolerance: Numerical-rank cutoff; σ_j ≤ ε_rank·‖·‖_F are dropped.
        max_iterations: Fixed iteration count overriding the stopping rule.
        hard_max_iterations: Upper clamp applied to the stopping rule.
        weighted_compression: Scale the J/K tolerance by ρ^k/c when True.
        contour_nodes: Trapezoid nodes per circle for contour coefficients.
        contour_nodes_cap: Largest node count reached by auto-doubling.
        adaptive_contour: Double contour nodes until coefficients settle.
        radius_factor: Multiplier of the default circle radius.
        pv_nodes: Gauss-Legendre nodes of the principal-value quadrature.

    """

    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=1e-12, gt=0.0, lt=1.0)
    envelope: float = Field(default=5.0, gt=0.0)
    rank_tolerance: float = Field(default=1e-14, ge=0.0)
    max_iterations: Optional[int] = Field(default=None, ge=1)
    hard_max_iterations: int = Field(default=20000, ge=1)
    weighted_compression: bool = True
    contour_nodes: int = Field(default=200, ge=8)
    contour_nodes_cap: int = Field(default=3200, ge=8)
    adaptive_contour: bool = True
    radius_factor: float = Field(default=1.0, gt=0.0)
    pv_nodes: int = Field(default=200, ge=4)

    @model_validator(mode="after")
    def _check_node_cap(self) -> "SolverConfig":
        if self.contour_nodes_cap < self.contour_nodes:
            raise ValueError("contour_nodes_cap must be >= contour_nodes")
        return self
