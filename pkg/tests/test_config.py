"""Tests for configuration models, errors and logging."""

import logging

import pytest
from pydantic import ValidationError

from harmonic_eigenpoints.config import DEFAULT_SEED, ConstructionParams, SolverConfig
from harmonic_eigenpoints.errors import (
    ArgumentError,
    CertificationError,
    EpsilonExhaustedError,
    HarmonicEigenpointsError,
    PreconditionError,
    describe,
)
from harmonic_eigenpoints.log import NAMESPACE, create_default_logger


class TestSolverConfig:
    """Tests for solver settings."""

    def test_defaults(self):
        """Defaults match the documented values."""
        config = SolverConfig()
        assert config.starts_per_expected_point == 50
        assert config.grad_tol == 1e-12
        assert config.seed == DEFAULT_SEED == 0xC0FFEE

    def test_too_few_starts(self):
        """At least 10 starts per expected point."""
        with pytest.raises(ValidationError):
            SolverConfig(starts_per_expected_point=5)

    def test_non_positive_tolerance(self):
        """Tolerances must be positive."""
        with pytest.raises(ValidationError):
            SolverConfig(cluster_angle_tol=0.0)

    def test_frozen(self):
        """Configs are immutable."""
        with pytest.raises(ValidationError):
            SolverConfig().seed = 1


class TestConstructionParams:
    """Tests for construction inputs and the epsilon schedule."""

    def test_default_schedule(self):
        """0.1 * 2^-k down to 1e-6, strictly decreasing."""
        schedule = ConstructionParams(d=3, n_target=3).epsilon_schedule()
        assert schedule[0] == 0.1
        assert schedule[-1] >= 1e-6
        assert schedule[-1] * 0.5 < 1e-6
        assert all(a > b > 0 for a, b in zip(schedule, schedule[1:]))
        assert len(schedule) == 17

    def test_zero_phase(self):
        """(a, b) = (0, 0) is refused."""
        with pytest.raises(ValidationError):
            ConstructionParams(d=3, n_target=3, base_phase=(0.0, 0.0))

    def test_floor_above_start(self):
        """The floor may not exceed the start."""
        with pytest.raises(ValidationError):
            ConstructionParams(d=3, n_target=3, epsilon_start=1e-3, epsilon_floor=1e-2)

    def test_degree_below_two(self):
        """The general path needs d >= 2."""
        with pytest.raises(ValidationError):
            ConstructionParams(d=1, n_target=3)

    def test_solver_config_inherits_seed(self):
        """Derived solver settings share the seed and nondegeneracy tolerance."""
        params = ConstructionParams(d=3, n_target=3, seed=7, nondegeneracy_tol=1e-9)
        config = params.solver_config(starts_per_expected_point=20)
        assert (config.seed, config.nondegeneracy_tol, config.starts_per_expected_point) == (7, 1e-9, 20)


class TestErrors:
    """Tests for the exception hierarchy."""

    def test_argument_errors_are_value_errors(self):
        """Bad arguments can be caught as ValueError."""
        assert issubclass(PreconditionError, ArgumentError)
        assert issubclass(ArgumentError, ValueError)
        assert issubclass(ArgumentError, HarmonicEigenpointsError)

    def test_epsilon_exhausted(self):
        """EpsilonExhaustedError is a certification failure carrying its level."""
        error = EpsilonExhaustedError("exhausted", level=4)
        assert isinstance(error, CertificationError)
        assert error.diagnostics == ""
        assert describe(error) == {"type": "EpsilonExhaustedError", "message": "exhausted", "level": 4}


class TestLogging:
    """Tests for the namespaced logger factory."""

    def test_logger_name(self):
        """Component loggers live under the package namespace."""
        logger = create_default_logger("SphereSolver")
        assert logger.name == f"{NAMESPACE}.SphereSolver"

    def test_handlers_configured_once(self):
        """Repeated calls share the namespace handlers."""
        create_default_logger("A")
        count = len(logging.getLogger(NAMESPACE).handlers)
        create_default_logger("B")
        assert len(logging.getLogger(NAMESPACE).handlers) == count
