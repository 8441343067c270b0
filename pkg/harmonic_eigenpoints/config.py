"""
Validated configuration for the solver and the constructor.

Both models are frozen; CLI flags build new instances instead of mutating.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

DEFAULT_SEED = 0xC0FFEE


class SolverConfig(BaseModel):
    """Knobs of the multistart Riemannian Newton solver."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    starts_per_expected_point: int = Field(50, ge=10)
    max_newton_iters: int = Field(100, ge=1)
    grad_tol: float = Field(1e-12, gt=0)
    cluster_angle_tol: float = Field(1e-6, gt=0)
    nondegeneracy_tol: float = Field(1e-8, gt=0)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)


class ConstructionParams(BaseModel):
    """Inputs of the inductive construction."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    d: int = Field(..., ge=2)
    n_target: int = Field(..., ge=2)
    epsilon_start: float = Field(0.1, gt=0)
    epsilon_ratio: float = Field(0.5, gt=0, lt=1)
    epsilon_floor: float = Field(1e-6, gt=0)
    base_phase: tuple[float, float] = (1.0, 0.0)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)
    residual_tol: float = Field(1e-10, gt=0)
    nondegeneracy_tol: float = Field(1e-8, gt=0)

    @model_validator(mode="after")
    def _check(self) -> "ConstructionParams":
        if self.base_phase == (0.0, 0.0):
            raise ValueError("base_phase (a, b) must not be (0, 0)")
        if self.epsilon_floor > self.epsilon_start:
            raise ValueError("epsilon_floor must not exceed epsilon_start")
        return self

    def epsilon_schedule(self) -> list[float]:
        """Strictly decreasing start * ratio**k, stopping at the floor."""
        schedule = []
        epsilon = self.epsilon_start
        while epsilon >= self.epsilon_floor:
            schedule.append(epsilon)
            epsilon *= self.epsilon_ratio
        return schedule

    def solver_config(self, **overrides: object) -> SolverConfig:
        """Solver settings derived from these parameters."""
        values: dict[str, object] = {
            "seed": self.seed,
            "nondegeneracy_tol": self.nondegeneracy_tol,
        }
        values.update(overrides)
        return SolverConfig(**values)
