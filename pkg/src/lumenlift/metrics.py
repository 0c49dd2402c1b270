"""Quantitative evaluation: lightness order error, flicker, luma stats.

LOE counts, per pixel pair, how often the relative lightness order of two
pixels differs between the original and the enhanced image; 0 means the
enhancement preserved the global lightness ranking. The pair comparison is
quadratic, so lightness maps are area-downsampled to a bounded size first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

from .imgcore import (
    DimensionDriftError,
    DimensionMismatchError,
    InvalidParamsError,
    TooFewFramesError,
    luma,
    require_rgb,
)


@dataclass(frozen=True)
class LoeConfig:
    """LOE settings; lightness is fixed to the per-pixel channel maximum."""

    max_dim: int = 100

    def __post_init__(self):
        if self.max_dim < 2:
            raise InvalidParamsError("max_dim must be >= 2")


def _lightness(image: np.ndarray) -> np.ndarray:
    return image.max(axis=2)


def downsample_dims(height: int, width: int, max_dim: int):
    """(rows, cols) of the lightness maps loe() actually compares."""
    longest = max(height, width)
    if longest <= max_dim:
        return height, width
    scale = max_dim / longest
    return max(1, round(height * scale)), max(1, round(width * scale))


def _area_downsample(plane: np.ndarray, max_dim: int) -> np.ndarray:
    h, w = plane.shape
    if max(h, w) <= max_dim:
        return plane
    nh, nw = downsample_dims(h, w, max_dim)
    # box filter = area averaging; deterministic for identical inputs
    img = Image.fromarray(plane.astype(np.float32), mode="F")
    return np.asarray(img.resize((nw, nh), Image.Resampling.BOX))


def loe(original: np.ndarray, enhanced: np.ndarray,
        config: LoeConfig = LoeConfig()) -> float:
    """Mean pairwise lightness-order disagreement, unnormalized.

    RD(x) counts pixels y whose order against x flips between the two
    images; the result is the mean of RD over all pixels of the
    downsampled maps, so it ranges from 0 to m - 1.
    """
    require_rgb(original)
    require_rgb(enhanced)
    if original.shape != enhanced.shape:
        raise DimensionMismatchError(
            f"shapes differ: {original.shape} vs {enhanced.shape}"
        )
    a = _area_downsample(_lightness(original), config.max_dim).ravel()
    b = _area_downsample(_lightness(enhanced), config.max_dim).ravel()
    m = a.size
    flips = 0
    block = max(1, 2 ** 22 // m)
    for start in range(0, m, block):
        stop = min(start + block, m)
        order_a = a[start:stop, None] >= a[None, :]
        order_b = b[start:stop, None] >= b[None, :]
        flips += int(np.count_nonzero(order_a != order_b))
    return flips / m


def flicker_index(frames) -> float:
    """Mean over consecutive frame pairs of the mean absolute luma change."""
    diffs = []
    prev = None
    for frame in frames:
        require_rgb(frame)
        y = luma(frame)
        if prev is not None:
            if y.shape != prev.shape:
                raise DimensionDriftError(
                    f"frame dimensions drifted: {prev.shape} vs {y.shape}"
                )
            diffs.append(np.mean(np.abs(y - prev), dtype=np.float64))
        prev = y
    if not diffs:
        raise TooFewFramesError("flicker index needs at least two frames")
    return float(np.mean(diffs))


def mean_luma(image: np.ndarray) -> float:
    """Arithmetic mean of the BT.601 intensity map."""
    return float(np.mean(luma(image), dtype=np.float64))
