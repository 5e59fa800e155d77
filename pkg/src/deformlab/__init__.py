"""Prescribed-Jacobian grid deformation and the tools built on it.

The deformation method turns a positive monitor ``f`` into a map ``phi`` of
the unit square with ``det grad phi = f(phi)``: solve a Neumann Poisson
problem for a curl-free velocity, then transport the lattice with RK4.
From the resulting map come the JD and CV feature maps, the CV content loss
and, alongside, the PSNR/SSIM/MOS evaluation metrics.
"""
from ._backend import BACKEND
from .deform import integrate_deformation, sample_field
from .errors import (
    ComputationError,
    DeformLabError,
    DimensionMismatch,
    EmptyBatch,
    EmptyImage,
    EmptyTable,
    FoldDetected,
    IncompatibleRHS,
    InvalidProbability,
    InvalidScore,
    NonFiniteField,
    NonFiniteInput,
    NonPositiveMonitor,
    SolverDiverged,
    TimeOutOfRange,
    WindowTooLarge,
)
from .features import (
    curl_of_map,
    cv_feature_map,
    deform_image,
    jacobian_determinant,
    jd_feature_map,
    render_feature_image,
)
from .fields import Grid2D, ScalarField2D, VectorField2D, discrete_mean
from .losses import adversarial_loss, content_loss_cv, perceptual_loss
from .metrics import SSIMParams, mean_ssim, mos_aggregate, mse, psnr, ssim_global
from .monitor import MonitorPair, image_to_monitor, monitor_at_time, normalize_monitor
from .poisson import solve_neumann_poisson, velocity_from_monitor

__version__ = "0.1.0"
