"""Floating-point verification layer."""

from .frames import (
    AmbientMetric,
    CylinderReport,
    FrameState,
    FramedCurve,
    InvalidInitialFrame,
    ParallelFrameSamples,
    StepMismatch,
    cylinder_check,
    default_frame,
    frame_residuals,
    max_gram_residual,
    max_hyperquadric_drift,
    parallel_frame_samples,
    reconstruct_curve,
)
from .grids import (
    EvolutionRun,
    GridMismatch,
    NonPositiveSample,
    NumericsError,
    SampledField,
    StabilityViolation,
    derivative,
    jets,
    read_field_csv,
    write_field_csv,
)
from .kernels import BACKEND
from .solvers import (
    burgers_gauge_check,
    evolve_filament,
    gauge_transform,
    heat_gauge_check,
    hopf_cole,
    inverse_hopf_cole,
    solve_burgers,
    solve_heat,
    solve_viscous_burgers,
)
