"""Run configuration: defaults, flat ``key=value`` files, and overrides.

Precedence is command-line flag > config file > built-in default. The file
is taken from ``--config`` or, failing that, the ``DEFORMLAB_CONFIG``
environment variable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .metrics import SSIMParams

ENV_VAR = "DEFORMLAB_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 1.0
    steps: int = 100
    solver_tol: float = 1e-10
    solver_max_iter: int = 10_000
    solver: str = "dct"
    ssim_window: int = 8
    ssim_c1: float = (0.01 * 255) ** 2
    ssim_c2: float = (0.03 * 255) ** 2
    ssim_alpha: float = 1.0
    ssim_beta: float = 1.0
    ssim_gamma: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "solver":
                if v not in ("dct", "cg"):
                    raise ValueError(f"solver must be 'dct' or 'cg', got {v!r}")
            elif f.name in ("alpha", "seed"):
                if v < 0:
                    raise ValueError(f"{f.name} must be non-negative, got {v!r}")
            elif not v > 0:
                raise ValueError(f"{f.name} must be positive, got {v!r}")

    def ssim_params(self) -> SSIMParams:
        return SSIMParams(
            c1=self.ssim_c1,
            c2=self.ssim_c2,
            alpha=self.ssim_alpha,
            beta=self.ssim_beta,
            gamma=self.ssim_gamma,
            window=self.ssim_window,
        )

    def solver_kwargs(self) -> dict:
        return {"tol": self.solver_tol, "max_iter": self.solver_max_iter, "method": self.solver}


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CASTS = {"float": float, "int": int, "str": str}


def _coerce(key: str, raw):
    cast = _CASTS[_TYPES[key]]
    if cast is int and isinstance(raw, str):
        as_float = float(raw)
        if as_float != int(as_float):
            raise ValueError(f"{key} must be an integer, got {raw!r}")
        return int(as_float)
    return cast(raw)


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise ValueError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Build a :class:`RunConfig` from defaults, a file, then overrides.

    ``None`` values in ``overrides`` are ignored, so unset CLI flags fall
    through to the file or the default.
    """
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    cfg = RunConfig()
    if path is not None:
        with open(path) as fh:
            cfg = replace(cfg, **parse_config_text(fh.read(), str(path)))
    if overrides:
        cfg = replace(cfg, **{k: _coerce(k, v) for k, v in overrides.items() if v is not None})
    return cfg
