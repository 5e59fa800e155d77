"""Monitor functions: positive fields prescribing the target Jacobian.

A monitor ``f`` is admissible when the lattice average of ``1/f`` equals 1,
the discrete statement that ``phi`` maps the unit square onto itself. The
average is the trapezoid rule (see :func:`deformlab.fields.discrete_mean`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyImage, NonPositiveMonitor, TimeOutOfRange
from .fields import ScalarField2D, as_gray_image, discrete_mean

__all__ = [
    "MonitorPair",
    "normalize_monitor",
    "image_to_monitor",
    "monitor_at_time",
    "reciprocal_rate",
]


def _check_positive(values: np.ndarray) -> None:
    if np.any(values <= 0):
        raise NonPositiveMonitor(f"monitor must be strictly positive (min = {values.min()!r})")


def normalize_monitor(raw: ScalarField2D) -> ScalarField2D:
    """Scale ``raw`` by the average of ``1/raw`` so the reciprocal averages to one.

    Raises
    ------
    NonPositiveMonitor
        If any sample is zero or negative.
    """
    values = raw.values
    _check_positive(values)
    scale = discrete_mean(1.0 / values)
    return ScalarField2D(scale * values)


@dataclass(frozen=True)
class MonitorPair:
    """Initial and target monitors on a common lattice.

    Both fields are expected to be normalized; use :meth:`from_raw` to build a
    pair from unnormalized samples.
    """

    f0: ScalarField2D
    f1: ScalarField2D

    def __post_init__(self):
        if self.f0.shape != self.f1.shape:
            raise ValueError(f"lattice mismatch: {self.f0.shape} vs {self.f1.shape}")
        _check_positive(self.f0.values)
        _check_positive(self.f1.values)

    @classmethod
    def from_raw(cls, f1_raw, f0_raw=None) -> "MonitorPair":
        """Normalize ``f1_raw`` (and ``f0_raw``, default all ones) into a pair."""
        f1 = normalize_monitor(f1_raw if isinstance(f1_raw, ScalarField2D) else ScalarField2D(f1_raw))
        if f0_raw is None:
            f0 = ScalarField2D(np.ones(f1.shape))
        else:
            f0 = normalize_monitor(f0_raw if isinstance(f0_raw, ScalarField2D) else ScalarField2D(f0_raw))
        return cls(f0, f1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.f0.shape


def image_to_monitor(img, alpha: float = 1.0) -> ScalarField2D:
    """Monitor ``1 + alpha * I / 255`` from an 8-bit image, normalized.

    ``alpha = 0`` is accepted and yields the constant monitor 1.
    """
    arr = as_gray_image(img)
    if arr.size == 0:
        raise EmptyImage("image has no pixels")
    if alpha < 0 or not np.isfinite(alpha):
        raise ValueError(f"alpha must be a finite non-negative number, got {alpha!r}")
    raw = 1.0 + alpha * (arr.astype(np.float64) / 255.0)
    return normalize_monitor(ScalarField2D(raw))


def monitor_at_time(pair: MonitorPair, t: float) -> ScalarField2D:
    """Reciprocal-linear blend: ``1/f(t) = (1 - t)/f0 + t/f1``."""
    if not 0.0 <= t <= 1.0:
        raise TimeOutOfRange(f"t must lie in [0, 1], got {t!r}")
    if t == 0.0:
        return pair.f0
    if t == 1.0:
        return pair.f1
    g = (1.0 - t) / pair.f0.values + t / pair.f1.values
    return ScalarField2D(1.0 / g)


def reciprocal_rate(pair: MonitorPair) -> ScalarField2D:
    """``-d/dt (1/f) = 1/f0 - 1/f1``, constant in time under the blend rule."""
    return ScalarField2D(1.0 / pair.f0.values - 1.0 / pair.f1.values)
