"""Timing classification and QM / Multisimultaneity predictions for
3-photon experiments with moving beam-splitters."""
from .errors import PhysicsError
from .experiment import ExperimentConfig, ScanRow, preset, scan, validate
from .montecarlo import EstimateResult, SamplerSpec, estimate_correlation, sample_counts, sample_triple
from .multisim import RegimePrediction, conditional_after, ms_correlation, ms_joint, predict
from .quantum import (
    OUTCOMES,
    JointDistribution,
    PathClass,
    PhaseSettings,
    path_amplitude,
    qm_correlation,
    qm_joint,
    qm_marginal,
    unitarity_residual,
)
from .spacetime import (
    AFTER,
    BEFORE,
    C,
    ChoiceDevice,
    Event,
    FeasibilitySpec,
    TimingLabel,
    TimingRegime,
    Velocity,
    boost_event,
    boost_time,
    check_feasibility,
    classify_all,
    classify_device,
    min_distance,
)

__version__ = "0.1.0"
