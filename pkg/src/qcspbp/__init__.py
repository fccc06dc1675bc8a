"""Quantized compressive sensing with dithering and projected back projection."""
from .errors import (ConfigError, DimensionError, FitError, ModelError, QCSError, ResolutionError,
                     SVDError)
from .sensing import (OperatorKind, SensingOperator, apply, apply_adjoint, build_bernoulli,
                      build_gaussian, build_operator, build_partial_dct, from_matrix)
from .quantize import (DitherMode, QuantizedMap, draw_dither, make_map, observe, observe_linear,
                       quantize, quantize_scalar)
from .models import (LowRank, Signal, Sparse, gen_lowrank, gen_sparse, project_lowrank,
                     project_sparse)
from .pbp import back_project, reconstruct, reconstruction_error
from .analysis import (DistortionEstimate, SweepResult, aggregate_trials, empirical_local_lpd,
                       empirical_lpd, empirical_rip, fit_decay_exponent)

__version__ = "0.1.0"
