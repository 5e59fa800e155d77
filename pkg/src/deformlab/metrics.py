"""Image quality metrics: MSE, PSNR, SSIM, windowed mean-SSIM and MOS."""
from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DimensionMismatch, EmptyTable, InvalidScore, WindowTooLarge
from .fields import as_gray_image

__all__ = [
    "SSIMParams",
    "Rating",
    "mse",
    "psnr",
    "ssim_global",
    "mean_ssim",
    "mos_aggregate",
    "read_ratings",
]


@dataclass(frozen=True)
class SSIMParams:
    """Constants and exponents of the SSIM index.

    With ``alpha = beta = gamma = 1`` the product of the luminance, contrast
    and structure terms reduces to the usual closed form, which is what is
    evaluated in that case. ``window`` is the tile side for :func:`mean_ssim`.
    """

    c1: float = (0.01 * 255) ** 2
    c2: float = (0.03 * 255) ** 2
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    window: int = 8

    def __post_init__(self):
        if not (self.c1 > 0 and self.c2 > 0):
            raise ValueError("c1 and c2 must be positive")
        if int(self.window) != self.window or self.window < 3:
            raise ValueError(f"window must be an integer >= 3, got {self.window!r}")


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = as_gray_image(a)
    b = as_gray_image(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    if a.size == 0:
        raise DimensionMismatch("images are empty")
    return a, b


def mse(a, b) -> float:
    """Mean squared pixel difference, accumulated exactly in integers."""
    a, b = _pair(a, b)
    diff = a.astype(np.int64) - b.astype(np.int64)
    return int(np.sum(diff * diff)) / diff.size


def psnr(a, b, peak: float = 255.0) -> float:
    """``10 log10(peak^2 / MSE)`` in dB; ``math.inf`` for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / err)


def _ssim_stats(x: np.ndarray, y: np.ndarray, p: SSIMParams) -> float:
    mu_x = x.mean()
    mu_y = y.mean()
    dx = x - mu_x
    dy = y - mu_y
    var_x = np.mean(dx * dx)
    var_y = np.mean(dy * dy)
    cov = np.mean(dx * dy)
    if p.alpha == 1 and p.beta == 1 and p.gamma == 1:
        num = (2.0 * mu_x * mu_y + p.c1) * (2.0 * cov + p.c2)
        den = (mu_x * mu_x + mu_y * mu_y + p.c1) * (var_x + var_y + p.c2)
        return float(num / den)
    sd_x = math.sqrt(var_x)
    sd_y = math.sqrt(var_y)
    c3 = p.c2 / 2.0
    lum = (2.0 * mu_x * mu_y + p.c1) / (mu_x * mu_x + mu_y * mu_y + p.c1)
    con = (2.0 * sd_x * sd_y + p.c2) / (var_x + var_y + p.c2)
    struct = (cov + c3) / (sd_x * sd_y + c3)
    # the structure term can be negative; keep its sign under real exponents
    return float(lum**p.alpha * con**p.beta * math.copysign(abs(struct) ** p.gamma, struct))


def ssim_global(a, b, params: SSIMParams | None = None) -> float:
    """SSIM from whole-image means, population variances and covariance."""
    a, b = _pair(a, b)
    p = params or SSIMParams()
    return _ssim_stats(a.astype(np.float64), b.astype(np.float64), p)


def mean_ssim(a, b, params: SSIMParams | None = None) -> float:
    """Average SSIM over non-overlapping ``window x window`` tiles.

    Tiles are laid out from the top-left corner; the last row and column of
    tiles keep whatever size remains.
    """
    a, b = _pair(a, b)
    p = params or SSIMParams()
    h, w = a.shape
    if p.window > min(h, w):
        raise WindowTooLarge(f"window {p.window} exceeds image size {w}x{h}")
    x = a.astype(np.float64)
    y = b.astype(np.float64)
    scores = [
        _ssim_stats(x[r:r + p.window, c:c + p.window], y[r:r + p.window, c:c + p.window], p)
        for r in range(0, h, p.window)
        for c in range(0, w, p.window)
    ]
    return math.fsum(scores) / len(scores)


class Rating(NamedTuple):
    image_id: str
    method_id: str
    rater_id: str
    score: int


def _check_score(score) -> int:
    try:
        value = float(score)
    except (TypeError, ValueError):
        raise InvalidScore(f"score {score!r} is not a number") from None
    if value != int(value) or not 1 <= value <= 5:
        raise InvalidScore(f"score must be an integer from 1 to 5, got {score!r}")
    return int(value)


def mos_aggregate(table: Iterable) -> list[tuple[str, float]]:
    """Mean opinion score per method, sorted by method id.

    Each record is ``(image_id, method_id, rater_id, score)``; the MOS of a
    method is the plain mean over all its (image, rater) scores.
    """
    sums: dict[str, int] = defaultdict(int)
    counts: dict[str, int] = defaultdict(int)
    for record in table:
        _, method, _, score = record
        sums[method] += _check_score(score)
        counts[method] += 1
    if not counts:
        raise EmptyTable("no ratings to aggregate")
    return [(m, sums[m] / counts[m]) for m in sorted(counts)]


def read_ratings(path) -> list[Rating]:
    """Load a ``image_id,method_id,rater_id,score`` CSV with a header row."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"image_id", "method_id", "rater_id", "score"} - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"ratings file lacks columns: {sorted(missing)}")
        return [
            Rating(row["image_id"], row["method_id"], row["rater_id"], _check_score(row["score"]))
            for row in reader
        ]
