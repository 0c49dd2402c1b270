"""Non-local-means denoising with a compiled fast path.

Weights are computed from patch distances on the intensity plane and shared
by all three channels. The offset loop exploits weight symmetry: the
distance field for offset -o is a shifted copy of the one for +o, so only
half the search window is ever evaluated. Set LUMENLIFT_BACKEND=numpy (or
=compiled) to override the automatic backend choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels_np
from .imgcore import InvalidParamsError, luma, require_rgb

try:
    from . import _kernels
except ImportError:
    _kernels = None


@dataclass(frozen=True)
class NlmParams:
    """Denoiser knobs.

    th >= 0 scales the overall strength (0 disables denoising entirely),
    lv > 0 scales the exponential bandwidth. Internally the weight uses
    sigma_n = 0.02 * th and bandwidth 0.04 * th * lv.
    """

    th: float = 0.7
    lv: float = 1.5
    patch_radius: int = 1
    search_radius: int = 3

    def __post_init__(self):
        if not self.th >= 0:
            raise InvalidParamsError(f"th must be >= 0, got {self.th}")
        if not self.lv > 0:
            raise InvalidParamsError(f"lv must be > 0, got {self.lv}")
        if self.patch_radius < 1:
            raise InvalidParamsError("patch_radius must be >= 1")
        if self.search_radius < self.patch_radius:
            raise InvalidParamsError("search_radius must be >= patch_radius")


def _select_kernels():
    """Return the kernel module in effect (compiled unless overridden)."""
    choice = os.environ.get("LUMENLIFT_BACKEND", "").strip().lower()
    if choice == "numpy":
        return _kernels_np
    if choice == "compiled":
        if _kernels is None:
            raise RuntimeError(
                "LUMENLIFT_BACKEND=compiled but the extension failed to build"
            )
        return _kernels
    if choice:
        raise ValueError(f"unknown LUMENLIFT_BACKEND value {choice!r}")
    return _kernels if _kernels is not None else _kernels_np


def active_backend() -> str:
    """Name of the kernel backend in effect: "compiled" or "numpy"."""
    return "compiled" if _select_kernels() is _kernels else "numpy"


def _denoise(image: np.ndarray, params: NlmParams, kernels) -> np.ndarray:
    height, width = image.shape[:2]
    patch, search = params.patch_radius, params.search_radius
    pad = search + patch

    padded_luma = np.pad(luma(image), pad, mode="reflect")
    planes = [np.pad(image[..., c], pad, mode="reflect") for c in range(3)]

    sigma = 0.02 * params.th
    bandwidth = 0.04 * params.th * params.lv
    sigma2 = np.float32(2.0 * sigma * sigma)
    inv_h2 = np.float32(1.0 / (bandwidth * bandwidth))

    # center offset contributes weight exp(-0) = 1 at every pixel
    den = np.ones((height, width), dtype=np.float32)
    nums = [planes[c][pad:pad + height, pad:pad + width].copy() for c in range(3)]

    diff2 = np.empty((height + search + 2 * patch, width + search + 2 * patch), np.float32)
    colsum = np.empty((height + search, width + search + 2 * patch), np.float32)
    arg = np.empty((height + search, width + search), np.float32)
    w = np.empty_like(arg)

    # lexicographic lower half; each offset also covers its mirror
    for dy in range(-search, 1):
        for dx in range(-search, search + 1):
            if dy == 0 and dx >= 0:
                continue
            col0 = -max(dx, 0)
            rect_h = height - dy
            rect_w = width + abs(dx)
            kernels.patch_dist_arg(padded_luma, patch, search, dy, dx,
                                   rect_h, rect_w, col0, sigma2, inv_h2,
                                   diff2, colsum, arg)
            np.exp(arg[:rect_h, :rect_w], out=w[:rect_h, :rect_w])
            kernels.accumulate_pair(planes[0], planes[1], planes[2],
                                    height, width, patch, search, dy, dx,
                                    col0, w, den, nums[0], nums[1], nums[2])

    out = np.empty((height, width, 3), dtype=np.float32)
    for c in range(3):
        np.divide(nums[c], den, out=out[..., c])
    return out


def nlm_denoise(image: np.ndarray, params: NlmParams = NlmParams()) -> np.ndarray:
    """Patch-similarity weighted average of the search window, per channel.

    output(p) = sum_q w(p,q) v(q) / sum_q w(p,q) over the
    (2*search_radius+1)^2 window, with
    w(p,q) = exp(-max(d2(p,q) - 2*sigma_n^2, 0) / h_f^2) and d2 the mean
    squared difference of the intensity patches around p and q. Borders are
    mirror-extended. th = 0 returns the input unchanged.
    """
    require_rgb(image)
    if params.th == 0:
        return image.copy()
    image = np.ascontiguousarray(image, dtype=np.float32)
    return _denoise(image, params, _select_kernels())
