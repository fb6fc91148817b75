"""Unimodular sequence design with low integrated sidelobe level."""
from .baselines import BaselineKind, can_iteration, misl_iteration, run_baseline
from .core import (
    AutocorrelationProfile,
    as_unimodular,
    autocorrelation_direct,
    isl,
    project_unimodular,
    psl,
)
from .fbmm import (
    BlockQuadratic,
    ConstantsState,
    block_coefficients,
    constants_init,
    constants_step,
    mm_step,
    run_fbmm,
    sweep,
)
from .init import init_frank, init_golomb, init_random
from .runs import RunConfig, RunTrace
from .spectral import autocorrelation_fft, forward_2n, inverse_first_n, isl_frequency

__version__ = "0.1.0"
