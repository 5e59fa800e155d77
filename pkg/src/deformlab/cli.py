"""Command-line front end.

Exit codes: 0 success, 1 usage or input-file error, 2 computation error
(fold, solver failure, incompatible inputs).
"""
from __future__ import annotations

import argparse
import logging
import math
import sys

from . import io
from .config import load_config
from .errors import ComputationError, FoldDetected
from .features import curl_of_map, deform_image, jacobian_determinant, render_feature_image
from .losses import adversarial_loss, content_loss_cv, perceptual_loss
from .metrics import mean_ssim, mos_aggregate, psnr, read_ratings, ssim_global

log = logging.getLogger("deformlab")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _add_pipeline_flags(p):
    p.add_argument("--alpha", type=float, help="monitor contrast: f = 1 + alpha * I / 255 (default 1.0)")
    p.add_argument("--steps", type=int, help="RK4 steps (default 100)")
    p.add_argument("--tol", dest="solver_tol", type=float, help="Poisson residual tolerance (default 1e-10)")
    p.add_argument("--max-iter", dest="solver_max_iter", type=int, help="iteration budget for --solver cg")
    p.add_argument("--solver", choices=("dct", "cg"), help="Poisson solver (default dct)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deformlab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value config file (default: $DEFORMLAB_CONFIG)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("deform", help="deform the unit-square grid for an image monitor")
    p.add_argument("--image", required=True)
    p.add_argument("--grid", required=True, help="output grid CSV")
    _add_pipeline_flags(p)

    p = sub.add_parser("features", help="JD and CV feature images")
    p.add_argument("--image", required=True)
    p.add_argument("--jd", required=True, help="output JD image (PNG)")
    p.add_argument("--cv", required=True, help="output CV image (PNG)")
    p.add_argument("--jd-csv")
    p.add_argument("--cv-csv")
    _add_pipeline_flags(p)

    p = sub.add_parser("metrics", help="PSNR, SSIM and mean-SSIM as CSV")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--ssim-window", dest="ssim_window", type=int)

    p = sub.add_parser("loss", help="content, adversarial and total loss")
    p.add_argument("--hr", required=True)
    p.add_argument("--sr", required=True)
    p.add_argument("--probs", help="discriminator probabilities, one per line")
    _add_pipeline_flags(p)

    p = sub.add_parser("mos", help="mean opinion score per method")
    p.add_argument("--ratings", required=True)
    return parser


_CONFIG_KEYS = ("alpha", "steps", "solver_tol", "solver_max_iter", "solver", "ssim_window")


def _cmd_deform(args, cfg, out):
    img = io.read_image(args.image)
    grid, _ = deform_image(img, cfg.alpha, cfg.steps, **cfg.solver_kwargs())
    io.write_grid_csv(args.grid, grid)


def _cmd_features(args, cfg, out):
    img = io.read_image(args.image)
    grid, _ = deform_image(img, cfg.alpha, cfg.steps, **cfg.solver_kwargs())
    jd = jacobian_determinant(grid)
    cv = curl_of_map(grid)
    io.write_image(args.jd, render_feature_image(jd))
    io.write_image(args.cv, render_feature_image(cv))
    if args.jd_csv:
        io.write_field_csv(args.jd_csv, jd)
    if args.cv_csv:
        io.write_field_csv(args.cv_csv, cv)


def _cmd_metrics(args, cfg, out):
    ref = io.read_image(args.ref)
    test = io.read_image(args.test)
    params = cfg.ssim_params()
    value = psnr(ref, test)
    psnr_text = "inf" if math.isinf(value) else f"{value:.6f}"
    out.write("psnr_db,ssim,mean_ssim\n")
    out.write(f"{psnr_text},{ssim_global(ref, test, params):.6f},{mean_ssim(ref, test, params):.6f}\n")


def _cmd_loss(args, cfg, out):
    hr = io.read_image(args.hr)
    sr = io.read_image(args.sr)
    content = content_loss_cv(hr, sr, cfg.alpha, cfg.steps, **cfg.solver_kwargs())
    if args.probs:
        adv = adversarial_loss(io.read_probs(args.probs))
        out.write("content,adversarial,total\n")
        out.write(f"{content!r},{adv!r},{perceptual_loss(content, adv)!r}\n")
    else:
        out.write("content,total\n")
        out.write(f"{content!r},{perceptual_loss(content, 0.0)!r}\n")


def _cmd_mos(args, cfg, out):
    out.write("method_id,mos\n")
    for method, score in mos_aggregate(read_ratings(args.ratings)):
        out.write(f"{method},{score:.2f}\n")


_COMMANDS = {
    "deform": _cmd_deform,
    "features": _cmd_features,
    "metrics": _cmd_metrics,
    "loss": _cmd_loss,
    "mos": _cmd_mos,
}


def run(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
        cfg = load_config(args.config, overrides)
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"deformlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    log.debug("config: %s", cfg)
    try:
        _COMMANDS[args.command](args, cfg, out)
    except FoldDetected as exc:
        print(f"deformlab: FoldDetected: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ComputationError as exc:
        print(f"deformlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"deformlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
