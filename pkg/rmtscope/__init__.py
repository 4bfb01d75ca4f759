"""Random-matrix spectrum sensing toolkit: ensembles, spectral laws, detectors and rate bounds."""

__version__ = "0.1.0"

from rmtscope.errors import ConfigError, DimensionError, NumericalError, RmtscopeError
