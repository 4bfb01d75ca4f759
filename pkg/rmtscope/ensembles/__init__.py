from .types import (
    DataMatrix,
    Directions,
    Distribution,
    Field,
    HermitianMatrix,
    Hypothesis,
    Scaling,
    SignalSpec,
    SquareComplexMatrix,
)
from .gaussian import sample_gaussian_matrix, sample_ginibre, sample_signal_plus_noise
from .covariance import hollow_wishart, normalized_trace, sample_covariance
from .point_cloud import PointCloud, build_erm, sample_point_cloud
from .specs import (
    DataEnsemble,
    EnsembleSpec,
    ErmEnsemble,
    GinibreProductEnsemble,
    NoiseEnsemble,
    ProductEnsemble,
    SignalEnsemble,
)
