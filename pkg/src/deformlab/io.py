"""File formats: grayscale images, lattice fields and grids as CSV.

Field CSV::

    nx,ny
    v(0,0),v(1,0),...,v(nx-1,0)
    ...                                 (ny rows, one per lattice row)

Grid CSV::

    nx,ny
    x,y                                 (nx*ny lines, row-major node order)

Floats are written with ``repr`` (shortest round-trip form), ``'.'`` as the
decimal separator and ``'\\n'`` line endings, so output is byte-stable.
"""
from __future__ import annotations

import numpy as np
from PIL import Image

from .fields import Grid2D, ScalarField2D

__all__ = [
    "read_image",
    "write_image",
    "write_field_csv",
    "read_field_csv",
    "write_grid_csv",
    "read_grid_csv",
    "read_probs",
]


def read_image(path) -> np.ndarray:
    """Load a PNG/PGM (or any Pillow format) as an 8-bit grayscale array.

    Colour input is reduced with the BT.601 luma weights.
    """
    with Image.open(path) as im:
        if im.mode not in ("L", "1"):
            im = im.convert("RGB").convert("L")
        else:
            im = im.convert("L")
        return np.array(im, dtype=np.uint8)


def write_image(path, pixels: np.ndarray) -> None:
    Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint8), mode="L").save(path, format="PNG")


def _fmt(v: float) -> str:
    return repr(float(v))


def write_field_csv(path, field: ScalarField2D) -> None:
    lines = [f"{field.nx},{field.ny}"]
    lines.extend(",".join(map(_fmt, row)) for row in field.values)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_header(line: str) -> tuple[int, int]:
    nx, ny = (int(t) for t in line.strip().split(","))
    return nx, ny


def read_field_csv(path) -> ScalarField2D:
    with open(path) as fh:
        nx, ny = _read_header(fh.readline())
        values = np.loadtxt(fh, delimiter=",", dtype=np.float64, ndmin=2)
    if values.shape != (ny, nx):
        raise ValueError(f"{path}: header says {nx}x{ny}, body has shape {values.shape[::-1]}")
    return ScalarField2D(values)


def write_grid_csv(path, grid: Grid2D) -> None:
    lines = [f"{grid.nx},{grid.ny}"]
    lines.extend(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(grid.px.ravel(), grid.py.ravel()))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid_csv(path) -> Grid2D:
    with open(path) as fh:
        nx, ny = _read_header(fh.readline())
        xy = np.loadtxt(fh, delimiter=",", dtype=np.float64, ndmin=2)
    if xy.shape != (nx * ny, 2):
        raise ValueError(f"{path}: expected {nx * ny} x,y pairs, got {xy.shape[0]}")
    return Grid2D(xy[:, 0].reshape(ny, nx), xy[:, 1].reshape(ny, nx))


def read_probs(path) -> list[float]:
    """Discriminator probabilities, one per line; a non-numeric header is skipped."""
    probs = []
    with open(path) as fh:
        for n, line in enumerate(fh):
            token = line.strip().split(",")[0]
            if not token:
                continue
            try:
                probs.append(float(token))
            except ValueError:
                if n == 0:
                    continue
                raise
    return probs
