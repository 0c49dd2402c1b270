"""Generate the bundled dark test images and their golden summaries.

Writes seeded synthetic low-light PNGs to tests/data/dark/ and records
the enhancement results (mean lumas before and after) in
tests/data/golden_enhance.json. Rerun only when the pipeline's intended
numeric behavior changes; the test suite treats the JSON as frozen.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from scipy.ndimage import gaussian_filter

from lumenlift.denoise import NlmParams
from lumenlift.imgcore import load_image, save_image
from lumenlift.metrics import mean_luma
from lumenlift.pipeline import PipelineConfig, dac, enhance

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"
PREVIEW_SAMPLE = "alley.png"


def _normalize(field: np.ndarray) -> np.ndarray:
    lo, hi = field.min(), field.max()
    return (field - lo) / (hi - lo)


def make_alley(rng) -> np.ndarray:
    """Dim gradient scene with a warm patch, like a streetlit alley."""
    h, w = 96, 128
    ramp = np.linspace(0.02, 0.18, w, dtype=np.float32)[None, :]
    base = np.repeat(ramp, h, axis=0)
    img = np.stack([base, base * 0.9, base * 1.1], axis=-1)
    img[30:60, 80:110, 0] += 0.12
    img[30:60, 80:110, 1] += 0.08
    img += rng.normal(0.0, 0.012, img.shape)
    return np.clip(img, 0.0, 1.0).astype(np.float32)


def make_moss(rng) -> np.ndarray:
    """Smooth blotchy texture, uniformly underexposed."""
    h, w = 120, 80
    planes = [
        _normalize(gaussian_filter(rng.normal(size=(h, w)), sigma=6.0)) * s
        for s in (0.16, 0.2, 0.12)
    ]
    img = np.stack(planes, axis=-1) + rng.normal(0.0, 0.008, (h, w, 3))
    return np.clip(img, 0.0, 1.0).astype(np.float32)


def make_spots(rng) -> np.ndarray:
    """Near-black frame with a few bright speculars (clamp exercise)."""
    h, w = 64, 64
    img = rng.random((h, w, 3)).astype(np.float32) * 0.06
    ys, xs = rng.integers(0, h, 5), rng.integers(0, w, 5)
    img[ys, xs] = rng.random((5, 3)).astype(np.float32) * 0.5 + 0.5
    return np.clip(img, 0.0, 1.0).astype(np.float32)


def main() -> None:
    dark_dir = DATA_DIR / "dark"
    dark_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240817)

    samples = {
        "alley.png": make_alley(rng),
        "moss.png": make_moss(rng),
        "spots.png": make_spots(rng),
    }

    config = PipelineConfig()
    golden = {"enhance": {}, "preview": {}}
    for name, image in samples.items():
        path = dark_dir / name
        save_image(image, path)
        loaded = load_image(path)  # goldens describe the PNG as tests see it
        in_luma = mean_luma(loaded)
        out_luma = mean_luma(enhance(loaded, config))
        if in_luma >= 0.2:
            raise SystemExit(f"{name}: mean luma {in_luma:.3f} is not dark")
        golden["enhance"][name] = {
            "input_mean_luma": round(in_luma, 12),
            "output_mean_luma": round(out_luma, 12),
        }
        print(f"{name}: {in_luma:.4f} -> {out_luma:.4f}")

    preview_src = load_image(dark_dir / PREVIEW_SAMPLE)
    preview_out = dac(preview_src, 0.25, 0.6, NlmParams())
    golden["preview"] = {
        "sample": PREVIEW_SAMPLE,
        "input_mean_luma": round(mean_luma(preview_src), 12),
        "output_mean_luma": round(mean_luma(preview_out), 12),
    }

    out_path = DATA_DIR / "golden_enhance.json"
    out_path.write_text(json.dumps(golden, indent=2) + "\n")
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
