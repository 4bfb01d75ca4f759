class RmtscopeError(Exception):
    """Base class for every error raised by rmtscope."""

    exit_code = 1
    kind = "internal"


class ConfigError(RmtscopeError, ValueError):
    """Invalid parameters or experiment configuration."""

    exit_code = 2
    kind = "config"


class DimensionError(ConfigError):
    """A shape or dimension contract was violated."""


class NumericalError(RmtscopeError, ArithmeticError):
    """A numerical routine failed (non-convergence, infeasible geometry, singular matrix)."""

    exit_code = 3
    kind = "numerical"


class DegenerateStatisticWarning(UserWarning):
    """Issued when a calibration sees a constant statistic distribution."""
