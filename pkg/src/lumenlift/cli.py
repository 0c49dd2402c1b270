"""Batch command line: enhance, dac, video, loe, bench.

Every command prints a single-line JSON summary to stdout. Exit codes:
0 success, 1 runtime failure (I/O, dimension errors), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
from PIL import Image as PilImage

from .denoise import NlmParams
from .imgcore import DimensionDriftError, load_image, save_image
from .metrics import LoeConfig, downsample_dims, flicker_index, loe, mean_luma
from .pipeline import (
    ALPHA_LIMIT,
    GAMMA_LIMIT,
    PipelineConfig,
    dac,
    enhance,
    enhance_video,
)

_BENCH_SEED = 1847


def _alpha_value(text: str) -> float:
    v = float(text)
    if not 0 <= v <= ALPHA_LIMIT:
        raise argparse.ArgumentTypeError(f"must be in [0, {ALPHA_LIMIT}]")
    return v


def _alpha_list(text: str):
    return tuple(_alpha_value(part) for part in text.split(","))


def _gamma_value(text: str) -> float:
    v = float(text)
    if not 0 < v <= GAMMA_LIMIT:
        raise argparse.ArgumentTypeError(f"must be in (0, {GAMMA_LIMIT}]")
    return v


def _th_value(text: str) -> float:
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _lv_value(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _resolution(text: str):
    try:
        w_text, h_text = text.lower().split("x")
        w, h = int(w_text), int(h_text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected WxH, e.g. 1920x1080")
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("dimensions must be >= 1")
    return w, h


def _emit(summary: dict) -> None:
    print(json.dumps(summary))


def _config_from(args) -> PipelineConfig:
    return PipelineConfig(
        alphas=args.alphas,
        gamma=args.gamma,
        pyramid_levels=args.levels,
        denoise=NlmParams(th=args.th, lv=args.lv),
        denoise_enabled=not args.no_denoise,
    )


def _cmd_enhance(args) -> int:
    image = load_image(args.input)
    config = _config_from(args)
    start = time.perf_counter()
    out = enhance(image, config)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    save_image(out, args.output)
    _emit({
        "input_mean_luma": mean_luma(image),
        "output_mean_luma": mean_luma(out),
        "elapsed_ms": round(elapsed_ms, 3),
    })
    return 0


def _cmd_dac(args) -> int:
    image = load_image(args.input)
    params = NlmParams(th=args.th, lv=args.lv)
    start = time.perf_counter()
    out = dac(image, args.alpha, args.gamma, params)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    save_image(out, args.output)
    _emit({
        "input_mean_luma": mean_luma(image),
        "output_mean_luma": mean_luma(out),
        "elapsed_ms": round(elapsed_ms, 3),
    })
    return 0


def _process_frame(task) -> str:
    in_path, out_path, config = task
    save_image(enhance(load_image(in_path), config), out_path)
    return out_path


def _check_frame_dims(frames) -> None:
    # Header-only reads; fails before any output is written, so parallel
    # runs abort the same way serial ones do.
    first = None
    for path in frames:
        with PilImage.open(path) as im:
            size = im.size
        if first is None:
            first = size
        elif size != first:
            raise DimensionDriftError(
                f"{path.name} is {size[0]}x{size[1]}, "
                f"expected {first[0]}x{first[1]}"
            )


def _cmd_video(args) -> int:
    in_dir, out_dir = Path(args.input), Path(args.output)
    frames = sorted(p for p in in_dir.glob("*.png") if p.is_file())
    if not frames:
        raise FileNotFoundError(f"no PNG frames in {in_dir}")
    _check_frame_dims(frames)
    out_dir.mkdir(parents=True, exist_ok=True)
    config = _config_from(args)
    tasks = [(str(p), str(out_dir / p.name), config) for p in frames]

    start = time.perf_counter()
    if args.jobs == 1:
        sink_paths = iter([t[1] for t in tasks])
        enhance_video(
            (load_image(t[0]) for t in tasks),
            config,
            lambda frame: save_image(frame, next(sink_paths)),
        )
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            list(pool.map(_process_frame, tasks))
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    if len(tasks) >= 2:
        flicker = flicker_index(load_image(t[1]) for t in tasks)
    else:
        flicker = 0.0
    _emit({
        "frames": len(tasks),
        "flicker_index": flicker,
        "elapsed_ms": round(elapsed_ms, 3),
    })
    return 0


def _cmd_loe(args) -> int:
    original = load_image(args.original)
    enhanced = load_image(args.enhanced)
    config = LoeConfig()
    value = loe(original, enhanced, config)
    nh, nw = downsample_dims(original.shape[0], original.shape[1], config.max_dim)
    _emit({"loe": value, "m": nh * nw})
    return 0


def _cmd_bench(args) -> int:
    width, height = args.resolution
    rng = np.random.default_rng(_BENCH_SEED)
    image = (rng.random((height, width, 3), dtype=np.float32)
             * np.float32(0.3)).astype(np.float32)
    if args.variant == "dac":
        run = lambda: dac(image, 0.25, 0.6, NlmParams())
    else:
        run = lambda: enhance(image, PipelineConfig())
    run()  # warm-up: page in buffers, import costs
    times = []
    for _ in range(args.iters):
        start = time.perf_counter()
        run()
        times.append((time.perf_counter() - start) * 1000.0)
    _emit({
        "variant": args.variant,
        "resolution": f"{width}x{height}",
        "median_ms": round(float(np.median(times)), 3),
        "p90_ms": round(float(np.percentile(times, 90)), 3),
    })
    return 0


def _add_denoise_flags(sub) -> None:
    sub.add_argument("--th", type=_th_value, default=0.7,
                     help="denoise strength, 0 disables (default 0.7)")
    sub.add_argument("--lv", type=_lv_value, default=1.5,
                     help="denoise bandwidth scale (default 1.5)")


def _add_enhance_flags(sub) -> None:
    sub.add_argument("--alphas", type=_alpha_list, default=(0.15, 0.6, 0.85),
                     help="comma-separated exposure alphas (default 0.15,0.6,0.85)")
    sub.add_argument("--gamma", type=_gamma_value, default=0.6)
    sub.add_argument("--levels", type=_positive_int, default=4,
                     help="pyramid levels (default 4)")
    sub.add_argument("--no-denoise", action="store_true")
    _add_denoise_flags(sub)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lumenlift",
        description="Low-light image and video enhancement",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("enhance", help="full multi-exposure enhancement")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_enhance_flags(p)
    p.set_defaults(func=_cmd_enhance)

    p = commands.add_parser("dac", help="fast single-exposure preview")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha", type=_alpha_value, default=0.25)
    p.add_argument("--gamma", type=_gamma_value, default=0.6)
    _add_denoise_flags(p)
    p.set_defaults(func=_cmd_dac)

    p = commands.add_parser("video", help="enhance a directory of PNG frames")
    p.add_argument("-i", "--input", required=True, help="input frame directory")
    p.add_argument("-o", "--output", required=True, help="output frame directory")
    _add_enhance_flags(p)
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="parallel frame workers (output is identical)")
    p.set_defaults(func=_cmd_video)

    p = commands.add_parser("loe", help="lightness order error between two images")
    p.add_argument("original")
    p.add_argument("enhanced")
    p.set_defaults(func=_cmd_loe)

    p = commands.add_parser("bench", help="time the pipeline on synthetic input")
    p.add_argument("--resolution", type=_resolution, default=(1920, 1080))
    p.add_argument("--iters", type=_positive_int, default=10)
    p.add_argument("--variant", choices=("dac", "full"), default="full")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
