"""Time the compiled denoise kernels against the numpy fallback.

The two backends share the arithmetic order, so outputs agree to the
last float32 bit modulo FMA contraction; this script reports the speed
gap and the preview-path (single exposure + denoise) latency for each.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from lumenlift.denoise import NlmParams, nlm_denoise
from lumenlift.pipeline import dac

RESOLUTIONS = {"vga": (480, 640), "hd": (720, 1280), "fhd": (1080, 1920)}


def _synthetic(height: int, width: int, seed: int = 99) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return (rng.random((height, width, 3), dtype=np.float32)
            * np.float32(0.3)).astype(np.float32)


def _median_ms(fn, iters: int) -> float:
    fn()  # warm-up
    times = []
    for _ in range(iters):
        start = time.perf_counter()
        fn()
        times.append((time.perf_counter() - start) * 1000.0)
    return float(np.median(times))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=5)
    parser.add_argument("--sizes", default="vga,fhd",
                        help=f"comma list from {sorted(RESOLUTIONS)}")
    args = parser.parse_args()

    params = NlmParams()
    print(f"{'size':>5} {'stage':>8} {'compiled':>10} {'numpy':>10} {'ratio':>7}")
    for name in args.sizes.split(","):
        h, w = RESOLUTIONS[name.strip()]
        image = _synthetic(h, w)
        for stage, fn in (
            ("denoise", lambda img=image: nlm_denoise(img, params)),
            ("dac", lambda img=image: dac(img, 0.25, 0.6, params)),
        ):
            results = {}
            for backend in ("compiled", "numpy"):
                os.environ["LUMENLIFT_BACKEND"] = backend
                results[backend] = _median_ms(fn, args.iters)
            os.environ.pop("LUMENLIFT_BACKEND", None)
            ratio = results["numpy"] / results["compiled"]
            print(f"{name:>5} {stage:>8} {results['compiled']:>8.1f}ms "
                  f"{results['numpy']:>8.1f}ms {ratio:>6.2f}x")


if __name__ == "__main__":
    main()
