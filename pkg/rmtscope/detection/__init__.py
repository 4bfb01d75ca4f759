from .lrt import LrtModel, deflection, lrt_statistic
from .detectors import (
    DetectorResult,
    energy_detector,
    estimate_sigma,
    mp_outlier_detector,
    ring_inner_detector,
    trace_detector,
    trace_statistic,
)
from .specs import (
    DetectorSpec,
    EnergyDetectorSpec,
    MpOutlierDetectorSpec,
    RingInnerDetectorSpec,
    TraceDetectorSpec,
)
from .harness import (
    MonteCarloHarness,
    RocCurve,
    ThresholdCalibration,
    calibrate_threshold,
    monte_carlo_roc,
)
