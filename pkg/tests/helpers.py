"""Synthetic inputs shared by the test modules."""
from pathlib import Path

import numpy as np

from deformlab.fields import reference_coordinates

GOLDEN = Path(__file__).parent / "golden"


def radial_monitor(n, contrast=3.0, sigma=0.15, dip=False):
    """Smooth radial raw monitor with max/min close to ``contrast``."""
    x, y = reference_coordinates(n, n)
    bump = np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / (2 * sigma**2))
    if dip:
        return contrast - (contrast - 1.0) * bump
    return 1.0 + (contrast - 1.0) * bump


def checkerboard(n=32, block=8):
    idx = np.arange(n) // block
    return (((idx[:, None] + idx[None, :]) % 2) * 255).astype(np.uint8)


def blob_image(n=48, sigma=0.2):
    x, y = reference_coordinates(n, n)
    g = np.exp(-((x - 0.4) ** 2 + (y - 0.6) ** 2) / (2 * sigma**2))
    return np.round(255 * g).astype(np.uint8)
