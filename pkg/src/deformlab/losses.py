"""Super-resolution training losses evaluated on precomputed inputs."""
from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, EmptyBatch, InvalidProbability, NonFiniteInput
from .features import cv_feature_map
from .fields import as_gray_image

__all__ = ["ADVERSARIAL_WEIGHT", "content_loss_cv", "adversarial_loss", "perceptual_loss"]

ADVERSARIAL_WEIGHT = 1e-3


def content_loss_cv(hr, sr, alpha: float = 1.0, steps: int = 100, **solver) -> float:
    """Mean squared difference between the CV maps of two images.

    Both maps are computed with identical parameters. Note this is the mean
    of squared differences, not its square root.
    """
    hr = as_gray_image(hr)
    sr = as_gray_image(sr)
    if hr.shape != sr.shape:
        raise DimensionMismatch(f"image shapes differ: {hr.shape} vs {sr.shape}")
    if np.array_equal(hr, sr):
        return 0.0
    cv_hr = cv_feature_map(hr, alpha, steps, **solver).values
    cv_sr = cv_feature_map(sr, alpha, steps, **solver).values
    diff = cv_hr - cv_sr
    return float(np.mean(diff * diff))


def adversarial_loss(probs) -> float:
    """Sum of ``-ln D`` over discriminator probabilities in ``(0, 1]``."""
    p = np.asarray(probs, dtype=np.float64).ravel()
    if p.size == 0:
        raise EmptyBatch("no discriminator outputs given")
    if not np.all((p > 0) & (p <= 1)):
        raise InvalidProbability("probabilities must lie in (0, 1]")
    return math.fsum(-math.log(v) for v in p)


def perceptual_loss(content: float, adversarial: float) -> float:
    """``content + 1e-3 * adversarial``."""
    for name, v in (("content", content), ("adversarial", adversarial)):
        if not math.isfinite(v) or v < 0:
            raise NonFiniteInput(f"{name} loss must be finite and non-negative, got {v!r}")
    return content + ADVERSARIAL_WEIGHT * adversarial
